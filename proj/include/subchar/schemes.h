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

// Decomposition schemes applied to source sentences.
//
// Training schemes rewrite every character that has a decomposition.
// Inference schemes touch only characters missing from the model's
// vocabulary, and only when at least one of their components (after
// base-form normalization and optional semantic replacement) is in the
// vocabulary. Everything else passes through byte for byte.

#ifndef SUBCHAR_SCHEMES_H_
#define SUBCHAR_SCHEMES_H_

#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subchar/decomp_db.h"
#include "subchar/vocab.h"

namespace subchar {

enum class SchemeKind {
  kBaseline,
  kTrainDecompose,
  kInferRemove,
  kInferDecomposeAll,
  kInferDecomposeLeft,
};

struct SchemeConfig {
  SchemeKind kind = SchemeKind::kBaseline;
  bool with_idc = false;         // kTrainDecompose only
  bool replace_radical = false;  // kInferDecomposeAll / kInferDecomposeLeft
  int max_depth = kDefaultMaxDepth;
  std::set<char32_t> excluded;   // never decomposed or removed

  bool is_inference() const;
  // Throws ConfigError on inconsistent flags.
  void Validate() const;
};

// Command-line names: baseline, train, train-idc, infer-remove, infer-all,
// infer-left. Returns nullopt for anything else.
std::optional<SchemeConfig> SchemeFromName(std::string_view name);
std::string SchemeName(const SchemeConfig& config);

enum class CharAction { kDecomposed, kRemoved, kStillUnknown, kExcluded };
const char* CharActionName(CharAction action);

struct CharLogEntry {
  size_t sentence;  // 1-based within the processed corpus
  char32_t character;
  CharAction action;
  std::string output;

  friend bool operator==(const CharLogEntry&, const CharLogEntry&) = default;
};

struct SchemeReport {
  size_t sentences = 0;
  size_t sentences_changed = 0;
  size_t chars_decomposed = 0;
  size_t chars_removed = 0;
  // Unseen characters left as they were because nothing in their
  // decomposition is known to the model (or they have none).
  size_t chars_still_unknown = 0;
  size_t chars_excluded = 0;
  std::vector<CharLogEntry> per_char_log;

  // Adds other's counts; its log entries are shifted by sentence_offset.
  void Merge(const SchemeReport& other, size_t sentence_offset);
  // "sentences=.. changed=.. decomposed=.. removed=.. still_unknown=.. excluded=.."
  std::string Summary() const;

  friend bool operator==(const SchemeReport&, const SchemeReport&) = default;
};

struct SchemeResult {
  std::string text;
  SchemeReport report;
};

// Characters in `excluded` are passed through. Throws FormatError on
// malformed UTF-8.
std::string ApplyTrainingDecomposition(const DecompositionDb& db,
                                       std::string_view sentence, bool with_idc,
                                       int max_depth,
                                       const std::set<char32_t>& excluded = {});

// config.kind must be an inference kind.
SchemeResult ApplyInferenceScheme(const DecompositionDb& db, const Vocabulary& vocab,
                                  std::string_view sentence,
                                  const SchemeConfig& config);

// Dispatches on config.kind; kBaseline is the identity.
SchemeResult ApplyScheme(const DecompositionDb& db, const Vocabulary& vocab,
                         std::string_view sentence, const SchemeConfig& config);

struct CorpusResult {
  std::vector<std::string> lines;
  SchemeReport report;
};

// Output line i corresponds to input line i. The result does not depend on
// num_threads.
CorpusResult PreprocessCorpus(const DecompositionDb& db, const Vocabulary& vocab,
                              std::span<const std::string> corpus,
                              const SchemeConfig& config, int num_threads = 1);

// Streams `in` to `out` in batches, one sentence per line, LF endings.
SchemeReport PreprocessStream(const DecompositionDb& db, const Vocabulary& vocab,
                              std::istream& in, std::ostream& out,
                              const SchemeConfig& config, int num_threads = 1,
                              size_t batch_lines = 8192);

}  // namespace subchar

#endif  // SUBCHAR_SCHEMES_H_
