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

// Ideographic Description Sequences.
//
// An IDS is a prefix expression over the twelve ideographic description
// characters U+2FF0..U+2FFB, e.g. "⿰魚弱" (left-right arrangement of 魚 and
// 弱). Components without a code point are written as entity references
// such as "&CDP-8C4B;" and are kept as opaque leaves.

#ifndef SUBCHAR_IDS_H_
#define SUBCHAR_IDS_H_

#include <compare>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subchar/errors.h"

namespace subchar {

class IdcOperator {
 public:
  static constexpr char32_t kFirst = 0x2FF0;
  static constexpr char32_t kLast = 0x2FFB;

  static bool IsOperator(char32_t cp) { return cp >= kFirst && cp <= kLast; }
  static std::optional<IdcOperator> FromCodePoint(char32_t cp);

  char32_t code_point() const { return code_point_; }
  // 3 for ⿲ and ⿳, 2 for the rest.
  int arity() const;
  std::string ToString() const;

  friend auto operator<=>(const IdcOperator&, const IdcOperator&) = default;

 private:
  explicit constexpr IdcOperator(char32_t cp) : code_point_(cp) {}
  char32_t code_point_;
};

// A leaf of a decomposition: either a Unicode scalar or a named entity.
class Component {
 public:
  // Throws std::invalid_argument for IDC operators.
  static Component OfCodePoint(char32_t cp);
  // Throws std::invalid_argument for empty names or names containing
  // whitespace or ';'.
  static Component OfEntity(std::string name);

  bool is_code_point() const { return std::holds_alternative<char32_t>(value_); }
  bool is_entity() const { return !is_code_point(); }
  char32_t code_point() const { return std::get<char32_t>(value_); }
  const std::string& entity_name() const { return std::get<std::string>(value_); }

  // UTF-8 text of the scalar, or "&name;" for entities.
  std::string ToString() const;

  friend auto operator<=>(const Component&, const Component&) = default;

 private:
  explicit Component(std::variant<char32_t, std::string> v)
      : value_(std::move(v)) {}
  std::variant<char32_t, std::string> value_;
};

class DecompositionTree {
 public:
  static DecompositionTree Leaf(Component component);
  // Throws std::invalid_argument unless children.size() == op.arity().
  static DecompositionTree Node(IdcOperator op,
                                std::vector<DecompositionTree> children);

  bool is_leaf() const { return std::holds_alternative<Component>(value_); }
  const Component& component() const { return std::get<Component>(value_); }
  IdcOperator op() const { return std::get<Branch>(value_).op; }
  const std::vector<DecompositionTree>& children() const {
    return std::get<Branch>(value_).children;
  }

  // A leaf has depth 0.
  int depth() const;

  friend bool operator==(const DecompositionTree& a, const DecompositionTree& b);

 private:
  struct Branch {
    IdcOperator op;
    std::vector<DecompositionTree> children;
  };
  explicit DecompositionTree(std::variant<Component, Branch> v)
      : value_(std::move(v)) {}
  std::variant<Component, Branch> value_;
};

enum class IdsErrorKind {
  kEmptyInput,
  kArityError,
  kTrailingInput,
  kUnknownToken,
};

const char* IdsErrorKindName(IdsErrorKind kind);

class IdsParseError : public Error {
 public:
  // offset is counted in scalars from the start of the expression.
  IdsParseError(IdsErrorKind kind, size_t offset, const std::string& what)
      : Error(what), kind_(kind), offset_(offset) {}
  IdsErrorKind kind() const { return kind_; }
  size_t offset() const { return offset_; }

 private:
  IdsErrorKind kind_;
  size_t offset_;
};

// Parses a prefix IDS expression, consuming all of it. Throws IdsParseError.
DecompositionTree ParseIds(std::string_view expr);

// Inverse of ParseIds.
std::string SerializeIds(const DecompositionTree& tree);

// Readable bracketed form, e.g. "⿰(魚 弱)". For diagnostics only.
std::string DebugString(const DecompositionTree& tree);

struct IdsRecord {
  char32_t character;
  DecompositionTree tree;
  size_t line;  // 1-based
};

struct IdsDiagnostic {
  size_t line;       // 1-based
  std::string kind;  // IdsErrorKindName() or a line-level kind
  std::string input;

  // "line:<n> error:<kind> input:<raw>"
  std::string ToString() const;
};

struct IdsFileResult {
  std::vector<IdsRecord> records;
  std::vector<IdsDiagnostic> diagnostics;
  size_t data_lines = 0;  // non-blank, non-comment lines
};

// Parses CHISE-style "U+XXXX<TAB>char<TAB>IDS[<TAB>IDS...]" lines. Lines
// starting with ";;" or "#" are comments. When a line carries several
// alternatives only the first is used; source tags such as "[GTJ]" or the
// "^...$(GHJ)" wrapping are stripped before parsing. Bad lines are reported
// in diagnostics and skipped.
IdsFileResult ParseIdsLines(std::span<const std::string> lines);
IdsFileResult ParseIdsStream(std::istream& in);
// Throws IoError if the file cannot be read.
IdsFileResult LoadIdsFile(const std::string& path);

}  // namespace subchar

#endif  // SUBCHAR_IDS_H_
