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

// Byte-pair encoding over Unicode scalars.
//
// Learning counts adjacent symbol pairs inside whitespace-separated words,
// weighted by word frequency, and repeatedly merges the most frequent one.
// Ties go to the lexicographically smallest (left, right) pair; learning
// stops early once no pair occurs at least twice. There is no end-of-word
// symbol. Applied output marks every non-final subword with a continuation
// marker ("c@@ d").

#ifndef SUBCHAR_BPE_H_
#define SUBCHAR_BPE_H_

#include <compare>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subchar {

inline constexpr const char* kDefaultContinuationMarker = "@@";

struct BpePair {
  std::string left;
  std::string right;

  friend auto operator<=>(const BpePair&, const BpePair&) = default;
};

class BpeModel {
 public:
  BpeModel() : BpeModel({}, 0) {}
  // Throws std::invalid_argument if merges.size() > num_merges, the marker
  // is empty or contains whitespace, or a symbol is empty or contains
  // whitespace.
  BpeModel(std::vector<BpePair> merges, int num_merges,
           std::string continuation_marker = kDefaultContinuationMarker);

  const std::vector<BpePair>& merges() const { return merges_; }
  int num_merges() const { return num_merges_; }
  const std::string& continuation_marker() const { return marker_; }

  // Segments a single word by replaying the merges in order.
  std::vector<std::string> SegmentWord(std::string_view word) const;

  // Serialized as "#bpe marker=<m> num_merges=<n>" followed by one
  // "left right" line per merge.
  void Write(std::ostream& out) const;
  // Throws FormatError.
  static BpeModel Read(std::istream& in);
  static BpeModel Load(const std::string& path);

 private:
  std::vector<BpePair> merges_;
  int num_merges_;
  std::string marker_;
  std::unordered_map<std::string, int> ranks_;  // "left right" -> rank
};

BpeModel LearnBpe(std::span<const std::string> corpus, int num_merges,
                  std::string continuation_marker = kDefaultContinuationMarker);

// Whitespace between words is copied through unchanged.
std::string ApplyBpe(const BpeModel& model, std::string_view sentence);

// Removes every "<marker><space>", undoing ApplyBpe for text that does not
// itself contain the marker.
std::string StripBpe(std::string_view text, std::string_view marker);

}  // namespace subchar

#endif  // SUBCHAR_BPE_H_
