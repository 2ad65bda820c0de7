// Copyright 2026 The Subchar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subchar/bpe.h"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "subchar/errors.h"
#include "subchar/utf8.h"

namespace subchar {
namespace {

std::string RankKey(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back(' ');
  key.append(right);
  return key;
}

bool HasWhitespace(std::string_view s) {
  size_t pos = 0;
  while (pos < s.size()) {
    char32_t cp;
    if (DecodeOne(s, &pos, &cp) && IsWhitespace(cp)) return true;
  }
  return false;
}

std::vector<std::string> SplitScalars(std::string_view word) {
  std::vector<std::string> symbols;
  size_t pos = 0;
  while (pos < word.size()) {
    const size_t start = pos;
    char32_t cp;
    if (!DecodeOne(word, &pos, &cp)) throw FormatError("invalid UTF-8 in BPE input");
    symbols.emplace_back(word.substr(start, pos - start));
  }
  return symbols;
}

// Merges every non-overlapping occurrence of (left, right), scanning left
// to right.
template <typename Symbol>
bool MergeInPlace(std::vector<Symbol>* symbols, const Symbol& left,
                  const Symbol& right, const Symbol& merged) {
  if (symbols->size() < 2) return false;
  size_t out = 0;
  bool changed = false;
  for (size_t i = 0; i < symbols->size();) {
    if (i + 1 < symbols->size() && (*symbols)[i] == left &&
        (*symbols)[i + 1] == right) {
      (*symbols)[out++] = merged;
      i += 2;
      changed = true;
    } else {
      (*symbols)[out++] = (*symbols)[i];
      ++i;
    }
  }
  symbols->resize(out);
  return changed;
}

// Incremental pair statistics over interned symbols.
class BpeLearner {
 public:
  explicit BpeLearner(std::span<const std::string> corpus)
      : queue_(PairOrder{&symbols_}) {
    std::map<std::string, int64_t> word_counts;
    for (const auto& sentence : corpus) {
      for (std::string_view word : SplitWhitespace(sentence)) {
        ++word_counts[std::string(word)];
      }
    }
    for (const auto& [word, count] : word_counts) {
      std::vector<int> ids;
      for (const auto& symbol : SplitScalars(word)) ids.push_back(Intern(symbol));
      words_.push_back(std::move(ids));
      freqs_.push_back(count);
    }
    for (size_t w = 0; w < words_.size(); ++w) AddPairs(w, +1);
  }

  std::vector<BpePair> Learn(int num_merges) {
    std::vector<BpePair> merges;
    while (static_cast<int>(merges.size()) < num_merges && !queue_.empty()) {
      const Entry best = *queue_.begin();
      if (best.count < 2) break;
      const int merged = Intern(symbols_[best.left] + symbols_[best.right]);
      merges.push_back({symbols_[best.left], symbols_[best.right]});

      std::vector<size_t> affected = std::move(index_[Key(best.left, best.right)]);
      index_.erase(Key(best.left, best.right));
      std::sort(affected.begin(), affected.end());
      affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
      for (size_t w : affected) {
        if (!Contains(words_[w], best.left, best.right)) continue;
        AddPairs(w, -1);
        MergeInPlace(&words_[w], best.left, best.right, merged);
        AddPairs(w, +1);
      }
    }
    return merges;
  }

 private:
  struct Entry {
    int64_t count;
    int left;
    int right;
  };

  // Highest count first, then lexicographically smallest (left, right).
  struct PairOrder {
    const std::vector<std::string>* symbols;
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.count != b.count) return a.count > b.count;
      const auto& s = *symbols;
      if (a.left != b.left) return s[a.left] < s[b.left];
      if (a.right != b.right) return s[a.right] < s[b.right];
      return false;
    }
  };

  static uint64_t Key(int left, int right) {
    return (static_cast<uint64_t>(left) << 32) | static_cast<uint32_t>(right);
  }

  static bool Contains(const std::vector<int>& word, int left, int right) {
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      if (word[i] == left && word[i + 1] == right) return true;
    }
    return false;
  }

  int Intern(const std::string& symbol) {
    auto [it, inserted] = ids_.emplace(symbol, static_cast<int>(symbols_.size()));
    if (inserted) symbols_.push_back(symbol);
    return it->second;
  }

  void AddPairs(size_t w, int sign) {
    const auto& word = words_[w];
    for (size_t i = 0; i + 1 < word.size(); ++i) {
      Adjust(word[i], word[i + 1], sign * freqs_[w]);
      if (sign > 0) index_[Key(word[i], word[i + 1])].push_back(w);
    }
  }

  void Adjust(int left, int right, int64_t delta) {
    int64_t& count = counts_[Key(left, right)];
    if (count > 0) queue_.erase(Entry{count, left, right});
    count += delta;
    if (count > 0) {
      queue_.insert(Entry{count, left, right});
    } else {
      counts_.erase(Key(left, right));
    }
  }

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<int>> words_;
  std::vector<int64_t> freqs_;
  std::unordered_map<uint64_t, int64_t> counts_;
  std::unordered_map<uint64_t, std::vector<size_t>> index_;
  std::set<Entry, PairOrder> queue_;
};

}  // namespace

BpeModel::BpeModel(std::vector<BpePair> merges, int num_merges,
                   std::string continuation_marker)
    : merges_(std::move(merges)),
      num_merges_(num_merges),
      marker_(std::move(continuation_marker)) {
  if (num_merges_ < 0) throw std::invalid_argument("num_merges must be >= 0");
  if (static_cast<int64_t>(merges_.size()) > num_merges_) {
    throw std::invalid_argument("more merges than num_merges");
  }
  if (marker_.empty() || HasWhitespace(marker_)) {
    throw std::invalid_argument("continuation marker must be non-empty and "
                                "contain no whitespace");
  }
  for (size_t rank = 0; rank < merges_.size(); ++rank) {
    const auto& merge = merges_[rank];
    if (merge.left.empty() || merge.right.empty() || HasWhitespace(merge.left) ||
        HasWhitespace(merge.right)) {
      throw std::invalid_argument("bad merge at rank " + std::to_string(rank));
    }
    // A repeated pair can never fire a second time; keep the first rank.
    ranks_.emplace(RankKey(merge.left, merge.right), static_cast<int>(rank));
  }
}

std::vector<std::string> BpeModel::SegmentWord(std::string_view word) const {
  std::vector<std::string> symbols = SplitScalars(word);
  int last = -1;
  while (symbols.size() > 1) {
    int best = std::numeric_limits<int>::max();
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = ranks_.find(RankKey(symbols[i], symbols[i + 1]));
      if (it != ranks_.end() && it->second > last && it->second < best) {
        best = it->second;
      }
    }
    if (best == std::numeric_limits<int>::max()) break;
    const BpePair& merge = merges_[best];
    MergeInPlace(&symbols, merge.left, merge.right, merge.left + merge.right);
    last = best;
  }
  return symbols;
}

void BpeModel::Write(std::ostream& out) const {
  out << "#bpe marker=" << marker_ << " num_merges=" << num_merges_ << '\n';
  for (const auto& merge : merges_) out << merge.left << ' ' << merge.right << '\n';
}

BpeModel BpeModel::Read(std::istream& in) {
  std::string raw;
  if (!std::getline(in, raw)) throw FormatError("empty BPE model");
  std::istringstream header{std::string(StripCarriageReturn(raw))};
  std::string tag, marker_field, count_field;
  header >> tag >> marker_field >> count_field;
  if (tag != "#bpe" || !marker_field.starts_with("marker=") ||
      !count_field.starts_with("num_merges=")) {
    throw FormatError("bad BPE header: " + raw);
  }
  const std::string marker = marker_field.substr(7);
  int num_merges = 0;
  try {
    size_t used = 0;
    num_merges = std::stoi(count_field.substr(11), &used);
    if (used != count_field.size() - 11) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw FormatError("bad merge count in BPE header: " + raw);
  }

  std::vector<BpePair> merges;
  size_t line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = StripCarriageReturn(raw);
    if (line.empty()) continue;
    const size_t space = line.find(' ');
    if (space == std::string_view::npos || space == 0 || space + 1 >= line.size() ||
        line.find(' ', space + 1) != std::string_view::npos) {
      throw FormatError("BPE model line " + std::to_string(line_no) +
                        ": expected \"left right\"");
    }
    merges.push_back({std::string(line.substr(0, space)),
                      std::string(line.substr(space + 1))});
  }
  if (in.bad()) throw IoError("read error in BPE model");
  try {
    return BpeModel(std::move(merges), num_merges, marker);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid BPE model: ") + e.what());
  }
}

BpeModel BpeModel::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open BPE model: " + path);
  return Read(in);
}

BpeModel LearnBpe(std::span<const std::string> corpus, int num_merges,
                  std::string continuation_marker) {
  if (num_merges < 0) throw std::invalid_argument("num_merges must be >= 0");
  BpeLearner learner(corpus);
  return BpeModel(learner.Learn(num_merges), num_merges,
                  std::move(continuation_marker));
}

std::string ApplyBpe(const BpeModel& model, std::string_view sentence) {
  std::string out;
  out.reserve(sentence.size() * 2);
  size_t pos = 0;
  while (pos < sentence.size()) {
    // Copy a whitespace run verbatim.
    size_t word_start = pos;
    while (word_start < sentence.size()) {
      size_t next = word_start;
      char32_t cp;
      if (!DecodeOne(sentence, &next, &cp)) {
        throw FormatError("invalid UTF-8 in BPE input");
      }
      if (!IsWhitespace(cp)) break;
      word_start = next;
    }
    out.append(sentence.substr(pos, word_start - pos));
    if (word_start >= sentence.size()) break;

    size_t word_end = word_start;
    while (word_end < sentence.size()) {
      size_t next = word_end;
      char32_t cp;
      if (!DecodeOne(sentence, &next, &cp)) {
        throw FormatError("invalid UTF-8 in BPE input");
      }
      if (IsWhitespace(cp)) break;
      word_end = next;
    }
    const auto pieces =
        model.SegmentWord(sentence.substr(word_start, word_end - word_start));
    for (size_t i = 0; i < pieces.size(); ++i) {
      out += pieces[i];
      if (i + 1 < pieces.size()) {
        out += model.continuation_marker();
        out.push_back(' ');
      }
    }
    pos = word_end;
  }
  return out;
}

std::string StripBpe(std::string_view text, std::string_view marker) {
  std::string pattern(marker);
  pattern.push_back(' ');
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (true) {
    const size_t hit = text.find(pattern, pos);
    if (hit == std::string_view::npos) {
      out.append(text.substr(pos));
      return out;
    }
    out.append(text.substr(pos, hit - pos));
    pos = hit + pattern.size();
  }
}

}  // namespace subchar
