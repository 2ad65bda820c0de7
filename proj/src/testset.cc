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

#include "subchar/testset.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unordered_map>

#include "subchar/io.h"
#include "subchar/utf8.h"

namespace subchar {

void HoldoutConfig::Validate() const {
  if (mode == HoldoutMode::kFrequencyThreshold) {
    if (max_count < 1) throw ConfigError("max_count must be >= 1");
    if (reference_vocab) {
      throw ConfigError("reference_vocab is only used in vocabulary mode");
    }
  } else if (!reference_vocab) {
    throw ConfigError("vocabulary mode needs a reference vocabulary");
  }
  if (!(length_ratio_max > 1.0)) throw ConfigError("length ratio limit must be > 1");
}

bool PassesLengthRatio(const SentencePair& pair, double limit) {
  const size_t src = SplitWhitespace(pair.source).size();
  const size_t tgt = SplitWhitespace(pair.target).size();
  const size_t lo = std::min(src, tgt);
  const size_t hi = std::max(src, tgt);
  if (lo == 0) return false;
  return static_cast<double>(hi) < limit * static_cast<double>(lo);
}

namespace {

using CountMap = std::unordered_map<char32_t, int64_t>;

CountMap CountLogographs(std::span<const SentencePair> bitext, int num_threads) {
  const size_t workers = std::clamp<size_t>(
      num_threads < 1 ? 1 : static_cast<size_t>(num_threads), 1,
      std::max<size_t>(bitext.size(), 1));
  const size_t chunk = (bitext.size() + workers - 1) / workers;
  std::vector<CountMap> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](size_t w) {
    try {
      const size_t end = std::min(bitext.size(), (w + 1) * chunk);
      for (size_t i = w * chunk; i < end; ++i) {
        for (char32_t cp : DecodeUtf8(bitext[i].source)) {
          if (IsLogographic(cp)) ++partial[w][cp];
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  CountMap total = std::move(partial[0]);
  for (size_t w = 1; w < workers; ++w) {
    for (const auto& [cp, n] : partial[w]) total[cp] += n;
  }
  return total;
}

bool ContainsAny(std::string_view text, const std::set<char32_t>& chars) {
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    if (DecodeOne(text, &pos, &cp) && chars.contains(cp)) return true;
  }
  return false;
}

std::set<char32_t> ScalarSet(std::string_view text) {
  std::set<char32_t> out;
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    if (DecodeOne(text, &pos, &cp)) out.insert(cp);
  }
  return out;
}

}  // namespace

SplitResult BuildUnseenSplit(std::span<const SentencePair> bitext,
                             const DecompositionDb& db, const HoldoutConfig& config,
                             int num_threads) {
  config.Validate();
  if (bitext.empty()) throw EmptyCorpusError();

  SplitResult result;
  const CountMap counts = CountLogographs(bitext, num_threads);
  for (const auto& [cp, n] : counts) {
    if (!db.IsDecomposable(cp)) continue;
    const bool trigger = config.mode == HoldoutMode::kFrequencyThreshold
                             ? n <= config.max_count
                             : !config.reference_vocab->ContainsChar(cp);
    if (trigger) {
      result.trigger_chars.insert(cp);
      result.trigger_counts[cp] = n;
    }
  }

  for (const SentencePair& pair : bitext) {
    if (!ContainsAny(pair.source, result.trigger_chars)) {
      result.train.push_back(pair);
    } else if (PassesLengthRatio(pair, config.length_ratio_max)) {
      result.unseen_test.push_back(pair);
    } else {
      ++result.rejected_by_ratio;
    }
  }
  if (result.trigger_chars.empty()) {
    result.warnings.push_back("no trigger characters found; unseen set is empty");
  } else if (result.unseen_test.empty()) {
    result.warnings.push_back(
        "every sentence with a trigger character failed the length-ratio filter");
  }
  return result;
}

std::string AuditViolation::ToString() const {
  std::string out;
  switch (kind) {
    case Kind::kTriggerInTrain:
      out = "trigger_in_train";
      break;
    case Kind::kMissingTrigger:
      out = "missing_trigger";
      break;
    case Kind::kUndecomposableTrigger:
      out = "undecomposable_trigger";
      break;
  }
  out += " set:" + set + " line:" + std::to_string(line);
  if (character != 0) {
    out += " char:" + EncodeUtf8(character) + " (" + FormatCodePointLabel(character) + ")";
  }
  return out;
}

AuditReport AuditSplit(const SplitResult& result, const DecompositionDb& db) {
  AuditReport report;
  std::map<char32_t, TriggerAudit> stats;
  for (char32_t cp : result.trigger_chars) {
    TriggerAudit& audit = stats[cp];
    audit.character = cp;
    audit.decomposable = db.IsDecomposable(cp);
    if (!audit.decomposable) {
      report.violations.push_back(
          {AuditViolation::Kind::kUndecomposableTrigger, cp, "manifest", 0});
    }
  }

  for (size_t i = 0; i < result.train.size(); ++i) {
    for (char32_t cp : ScalarSet(result.train[i].source)) {
      auto it = stats.find(cp);
      if (it == stats.end()) continue;
      ++it->second.train_sentences;
      report.violations.push_back(
          {AuditViolation::Kind::kTriggerInTrain, cp, "train", i + 1});
    }
  }

  for (size_t i = 0; i < result.unseen_test.size(); ++i) {
    std::vector<char32_t> present;
    for (char32_t cp : ScalarSet(result.unseen_test[i].source)) {
      auto it = stats.find(cp);
      if (it == stats.end()) continue;
      ++it->second.unseen_sentences;
      present.push_back(cp);
    }
    if (present.empty()) {
      report.violations.push_back(
          {AuditViolation::Kind::kMissingTrigger, 0, "unseen", i + 1});
      continue;
    }
    const bool any_decomposable = std::any_of(
        present.begin(), present.end(), [&](char32_t cp) { return db.IsDecomposable(cp); });
    if (!any_decomposable) {
      for (char32_t cp : present) {
        report.violations.push_back(
            {AuditViolation::Kind::kUndecomposableTrigger, cp, "unseen", i + 1});
      }
    }
  }

  for (auto& [cp, audit] : stats) report.triggers.push_back(audit);
  return report;
}

std::vector<SentencePair> ReadBitext(const std::string& source_path,
                                     const std::string& target_path) {
  std::vector<std::string> src = ReadLines(source_path);
  std::vector<std::string> tgt = ReadLines(target_path);
  if (src.size() != tgt.size()) {
    throw FormatError("line count mismatch: " + source_path + " has " +
                      std::to_string(src.size()) + ", " + target_path + " has " +
                      std::to_string(tgt.size()));
  }
  std::vector<SentencePair> bitext;
  bitext.reserve(src.size());
  for (size_t i = 0; i < src.size(); ++i) {
    bitext.push_back({std::move(src[i]), std::move(tgt[i])});
  }
  return bitext;
}

std::vector<SentencePair> ReadBitextTsv(const std::string& path) {
  std::vector<SentencePair> bitext;
  const std::vector<std::string> lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw FormatError(path + ":" + std::to_string(i + 1) +
                        ": expected <source><TAB><target>");
    }
    bitext.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return bitext;
}

namespace {

void WriteSide(const std::string& path, const std::vector<SentencePair>& pairs,
               bool source) {
  std::vector<std::string> lines;
  lines.reserve(pairs.size());
  for (const auto& pair : pairs) lines.push_back(source ? pair.source : pair.target);
  WriteLines(path, lines);
}

std::vector<SentencePair> ReadPairs(const std::filesystem::path& dir,
                                    const std::string& stem) {
  return ReadBitext((dir / (stem + ".src")).string(), (dir / (stem + ".tgt")).string());
}

}  // namespace

void WriteSplit(const SplitResult& result, const std::string& dir) {
  const std::filesystem::path root(dir);
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  WriteSide((root / "train.src").string(), result.train, true);
  WriteSide((root / "train.tgt").string(), result.train, false);
  WriteSide((root / "unseen.src").string(), result.unseen_test, true);
  WriteSide((root / "unseen.tgt").string(), result.unseen_test, false);
  std::vector<std::string> manifest;
  for (char32_t cp : result.trigger_chars) {
    auto it = result.trigger_counts.find(cp);
    const int64_t n = it == result.trigger_counts.end() ? 0 : it->second;
    manifest.push_back(EncodeUtf8(cp) + "\t" + std::to_string(n));
  }
  WriteLines((root / "triggers.tsv").string(), manifest);
}

SplitResult ReadSplit(const std::string& dir) {
  const std::filesystem::path root(dir);
  SplitResult result;
  result.train = ReadPairs(root, "train");
  result.unseen_test = ReadPairs(root, "unseen");
  const std::string manifest_path = (root / "triggers.tsv").string();
  const std::vector<std::string> manifest = ReadLines(manifest_path);
  for (size_t i = 0; i < manifest.size(); ++i) {
    const std::string& line = manifest[i];
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    std::vector<char32_t> cps;
    int64_t count = 0;
    bool ok = tab != std::string::npos && TryDecodeUtf8(line.substr(0, tab), &cps) &&
              cps.size() == 1;
    if (ok) {
      try {
        size_t used = 0;
        count = std::stoll(line.substr(tab + 1), &used);
        ok = used == line.size() - tab - 1;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok) {
      throw FormatError(manifest_path + ":" + std::to_string(i + 1) +
                        ": expected <char><TAB><count>");
    }
    result.trigger_chars.insert(cps[0]);
    result.trigger_counts[cps[0]] = count;
  }
  return result;
}

}  // namespace subchar
