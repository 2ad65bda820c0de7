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

#ifndef SUBCHAR_DECOMP_DB_H_
#define SUBCHAR_DECOMP_DB_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "subchar/errors.h"
#include "subchar/ids.h"

namespace subchar {

using CharMap = std::map<char32_t, char32_t>;

// Expansion cap used when decomposing for training.
inline constexpr int kDefaultMaxDepth = 8;

// Bumped whenever the embedded tables change.
inline constexpr const char* kDefaultTablesVersion = "1";

// Variant radical -> standalone base form, e.g. 氵 -> 水. Position-dependent
// radicals use their left-hand reading (阝 -> 阜).
const CharMap& DefaultBaseForms();

// Out-of-vocabulary radical -> in-vocabulary character of related meaning.
// Ships with 疒 -> 病 only.
const CharMap& DefaultSemanticReplacements();

// Element of a flattened decomposition.
class FlatSymbol {
 public:
  FlatSymbol(Component c) : value_(std::move(c)) {}  // NOLINT
  FlatSymbol(IdcOperator op) : value_(op) {}         // NOLINT

  bool is_operator() const { return std::holds_alternative<IdcOperator>(value_); }
  const Component& component() const { return std::get<Component>(value_); }
  IdcOperator op() const { return std::get<IdcOperator>(value_); }
  std::string ToString() const;

  friend bool operator==(const FlatSymbol&, const FlatSymbol&) = default;

 private:
  std::variant<Component, IdcOperator> value_;
};

struct FlatDecomposition {
  std::vector<FlatSymbol> symbols;
  bool with_idc = false;

  // Concatenation of the symbols, no separators.
  std::string ToString() const;
  friend bool operator==(const FlatDecomposition&, const FlatDecomposition&) = default;
};

class NotDecomposableError : public Error {
 public:
  explicit NotDecomposableError(char32_t character);
  char32_t character() const { return character_; }

 private:
  char32_t character_;
};

// Immutable character -> decomposition table plus the two lookup tables
// used by inference-time decomposition.
class DecompositionDb {
 public:
  // Empty tree table with the default lookup tables.
  DecompositionDb();

  // Entries whose tree is just the character itself are dropped. Throws
  // ConfigError if base_forms contains a cycle.
  DecompositionDb(std::vector<std::pair<char32_t, DecompositionTree>> trees,
                  CharMap base_forms, CharMap semantic_replacements);

  // Keeps the first record per character.
  static DecompositionDb FromRecords(std::span<const IdsRecord> records,
                                     CharMap base_forms = DefaultBaseForms(),
                                     CharMap semantic_replacements =
                                         DefaultSemanticReplacements());

  // Returns nullptr when the character has no entry.
  const DecompositionTree* Find(char32_t character) const;
  bool IsDecomposable(char32_t character) const {
    return Find(character) != nullptr;
  }
  size_t size() const { return trees_.size(); }

  const CharMap& base_forms() const { return base_forms_; }
  const CharMap& semantic_replacements() const { return semantic_replacements_; }

 private:
  std::unordered_map<char32_t, DecompositionTree> trees_;
  CharMap base_forms_;
  CharMap semantic_replacements_;
};

// Pre-order traversal; operators are kept only when with_idc is set.
FlatDecomposition Flatten(const DecompositionTree& tree, bool with_idc);

// Replaces every component that has its own entry by that entry's
// components, level by level, until nothing expands or max_depth levels
// have been applied. max_depth == 1 is Flatten(tree, false). Throws
// NotDecomposableError for characters without an entry and
// std::invalid_argument for max_depth < 1.
FlatDecomposition ExpandRecursive(const DecompositionDb& db, char32_t character,
                                  int max_depth);

// Follows base_forms to its end; identity for entities and unmapped scalars.
Component NormalizeBaseForm(const DecompositionDb& db, const Component& component);

std::optional<Component> SemanticReplacement(const DecompositionDb& db,
                                             const Component& component);

// Two-column "variant<TAB>base" tables. Blank lines and lines starting with
// '#' or ';;' are ignored. Throws FormatError on malformed rows.
CharMap ParseCharMap(std::istream& in);
CharMap LoadCharMapFile(const std::string& path);
void WriteCharMap(const CharMap& map, std::ostream& out);

}  // namespace subchar

#endif  // SUBCHAR_DECOMP_DB_H_
