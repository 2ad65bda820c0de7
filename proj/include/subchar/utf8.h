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

#ifndef SUBCHAR_UTF8_H_
#define SUBCHAR_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace subchar {

// Largest valid Unicode scalar value.
inline constexpr char32_t kMaxCodePoint = 0x10FFFF;

// Decodes one scalar starting at text[*pos] and advances *pos past it.
// Returns false (and advances by one byte) on malformed input, overlong
// encodings, surrogates and values above U+10FFFF.
bool DecodeOne(std::string_view text, size_t* pos, char32_t* out);

// Decodes a whole string. Throws FormatError on malformed UTF-8.
std::vector<char32_t> DecodeUtf8(std::string_view text);

// Returns false instead of throwing.
bool TryDecodeUtf8(std::string_view text, std::vector<char32_t>* out);

void AppendUtf8(char32_t cp, std::string* out);
std::string EncodeUtf8(char32_t cp);
std::string EncodeUtf8(const std::vector<char32_t>& cps);

// Unicode White_Space property.
bool IsWhitespace(char32_t cp);

// CJK Unified Ideographs (base block, extensions A-D) and the CJK
// Compatibility Ideographs blocks.
bool IsLogographic(char32_t cp);

// "U+9C2F" style label; at least four hex digits, upper case.
std::string FormatCodePointLabel(char32_t cp);

// Splits on runs of whitespace; never returns empty tokens.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

// Strips a trailing CR so CRLF input behaves like LF input.
std::string_view StripCarriageReturn(std::string_view line);

}  // namespace subchar

#endif  // SUBCHAR_UTF8_H_
