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

#include "subchar/vocab.h"

#include <fstream>
#include <vector>

#include "subchar/errors.h"
#include "subchar/utf8.h"

namespace subchar {

void Vocabulary::AddText(std::string_view text) {
  size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp;
    if (!DecodeOne(text, &pos, &cp)) throw FormatError("invalid UTF-8 in corpus");
    if (!IsWhitespace(cp)) char_set_.insert(cp);
  }
}

size_t Vocabulary::AttachBpe(const BpeModel& model) {
  size_t skipped = 0;
  std::vector<char32_t> cps;
  for (const auto& merge : model.merges()) {
    std::string token = merge.left + merge.right;
    bool known = TryDecodeUtf8(token, &cps);
    for (char32_t cp : cps) known = known && char_set_.contains(cp);
    if (known) {
      token_set_.insert(std::move(token));
    } else {
      ++skipped;
    }
  }
  return skipped;
}

void Vocabulary::Write(std::ostream& out) const {
  for (char32_t cp : char_set_) out << EncodeUtf8(cp) << '\n';
  for (const auto& token : token_set_) out << token << '\n';
}

Vocabulary Vocabulary::Read(std::istream& in, std::string source_corpus_id) {
  Vocabulary vocab(std::move(source_corpus_id));
  std::string raw;
  size_t line_no = 0;
  std::vector<char32_t> cps;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = StripCarriageReturn(raw);
    if (line.empty()) continue;
    if (!TryDecodeUtf8(line, &cps)) {
      throw FormatError("vocabulary line " + std::to_string(line_no) +
                        ": invalid UTF-8");
    }
    for (char32_t cp : cps) {
      if (IsWhitespace(cp)) {
        throw FormatError("vocabulary line " + std::to_string(line_no) +
                          ": symbols may not contain whitespace");
      }
    }
    vocab.char_set_.insert(cps.begin(), cps.end());
    if (cps.size() > 1) vocab.token_set_.emplace(line);
  }
  if (in.bad()) throw IoError("read error in vocabulary");
  return vocab;
}

Vocabulary Vocabulary::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary: " + path);
  return Read(in, path);
}

Vocabulary BuildCharVocab(std::span<const std::string> corpus,
                          std::string source_corpus_id) {
  Vocabulary vocab(std::move(source_corpus_id));
  for (const auto& sentence : corpus) vocab.AddText(sentence);
  return vocab;
}

}  // namespace subchar
