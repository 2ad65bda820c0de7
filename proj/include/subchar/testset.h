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

// Unseen-character challenge sets.
//
// Sentence pairs whose source contains a rare (or out-of-vocabulary)
// decomposable logographic character are pulled out of the training data.
// Those that also pass a source/target length-ratio filter become the
// challenge set; the rest are dropped so the trigger characters never
// reach training.

#ifndef SUBCHAR_TESTSET_H_
#define SUBCHAR_TESTSET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "subchar/decomp_db.h"
#include "subchar/errors.h"
#include "subchar/vocab.h"

namespace subchar {

struct SentencePair {
  std::string source;
  std::string target;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

enum class HoldoutMode { kFrequencyThreshold, kVocabularyMembership };

struct HoldoutConfig {
  HoldoutMode mode = HoldoutMode::kFrequencyThreshold;
  int64_t max_count = 2;  // rare means count <= max_count
  double length_ratio_max = 3.5;
  std::optional<Vocabulary> reference_vocab;  // kVocabularyMembership only

  // Throws ConfigError.
  void Validate() const;
};

struct SplitResult {
  std::vector<SentencePair> train;
  std::vector<SentencePair> unseen_test;
  std::set<char32_t> trigger_chars;
  // Source-side occurrences of each trigger in the input corpus.
  std::map<char32_t, int64_t> trigger_counts;
  size_t rejected_by_ratio = 0;
  std::vector<std::string> warnings;
};

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("empty parallel corpus") {}
};

// Whitespace token counts; max(src, tgt) / min(src, tgt) < limit. Pairs with
// an empty side never pass.
bool PassesLengthRatio(const SentencePair& pair, double limit);

// Throws EmptyCorpusError for an empty bitext. A corpus without triggers is
// not an error: unseen_test stays empty and a warning is recorded.
SplitResult BuildUnseenSplit(std::span<const SentencePair> bitext,
                             const DecompositionDb& db, const HoldoutConfig& config,
                             int num_threads = 1);

struct AuditViolation {
  enum class Kind {
    kTriggerInTrain,         // trigger character in a train source
    kMissingTrigger,         // unseen source without any trigger
    kUndecomposableTrigger,  // trigger without a decomposition
  };
  Kind kind;
  char32_t character;  // 0 for kMissingTrigger
  std::string set;     // "train", "unseen" or "manifest"
  size_t line;         // 1-based; 0 for manifest entries

  std::string ToString() const;
};

struct TriggerAudit {
  char32_t character;
  size_t unseen_sentences = 0;
  size_t train_sentences = 0;
  bool decomposable = false;
};

struct AuditReport {
  std::vector<AuditViolation> violations;
  std::vector<TriggerAudit> triggers;

  bool ok() const { return violations.empty(); }
};

// Re-derives both split guarantees from scratch.
AuditReport AuditSplit(const SplitResult& result, const DecompositionDb& db);

// Bitext readers. Throw IoError / FormatError (mismatched line counts,
// TSV rows without exactly one tab).
std::vector<SentencePair> ReadBitext(const std::string& source_path,
                                     const std::string& target_path);
std::vector<SentencePair> ReadBitextTsv(const std::string& path);

// train.src, train.tgt, unseen.src, unseen.tgt and triggers.tsv
// ("<char><TAB><count>") under dir, which is created if needed.
void WriteSplit(const SplitResult& result, const std::string& dir);
SplitResult ReadSplit(const std::string& dir);

}  // namespace subchar

#endif  // SUBCHAR_TESTSET_H_
