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

#ifndef SUBCHAR_VOCAB_H_
#define SUBCHAR_VOCAB_H_

#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "subchar/bpe.h"

namespace subchar {

// Symbols known to a trained model: every non-whitespace scalar of the
// training source plus, once a BPE model is attached, its merged subwords.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::string source_corpus_id)
      : source_corpus_id_(std::move(source_corpus_id)) {}

  // Adds every non-whitespace scalar. Throws FormatError on bad UTF-8.
  void AddText(std::string_view text);

  // Adds the subword produced by each merge. Merges whose scalars are not
  // all in char_set are skipped; returns the number skipped.
  size_t AttachBpe(const BpeModel& model);

  bool ContainsChar(char32_t cp) const { return char_set_.contains(cp); }
  bool ContainsToken(const std::string& token) const {
    return token_set_.contains(token);
  }

  const std::set<char32_t>& char_set() const { return char_set_; }
  const std::set<std::string>& token_set() const { return token_set_; }
  const std::string& source_corpus_id() const { return source_corpus_id_; }

  // One symbol per line: scalars in code point order, then subwords in
  // byte order.
  void Write(std::ostream& out) const;
  // Single-scalar lines go to char_set; longer lines go to token_set and
  // contribute their scalars to char_set. Throws FormatError.
  static Vocabulary Read(std::istream& in, std::string source_corpus_id = "");
  static Vocabulary Load(const std::string& path);

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::set<char32_t> char_set_;
  std::set<std::string> token_set_;
  std::string source_corpus_id_;
};

Vocabulary BuildCharVocab(std::span<const std::string> corpus,
                          std::string source_corpus_id = "");

inline bool IsUnseen(const Vocabulary& vocab, char32_t cp) {
  return !vocab.ContainsChar(cp);
}

}  // namespace subchar

#endif  // SUBCHAR_VOCAB_H_
