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

#include "subchar/decomp_db.h"

#include <fstream>
#include <set>
#include <stdexcept>

#include "subchar/utf8.h"

namespace subchar {

const CharMap& DefaultBaseForms() {
  static const CharMap* const kTable = new CharMap{
      {U'氵', U'水'}, {U'亻', U'人'}, {U'扌', U'手'}, {U'忄', U'心'},
      {U'犭', U'犬'}, {U'艹', U'艸'}, {U'辶', U'辵'}, {U'飠', U'食'},
      {U'饣', U'食'}, {U'訁', U'言'}, {U'讠', U'言'}, {U'釒', U'金'},
      {U'钅', U'金'}, {U'阝', U'阜'}, {U'刂', U'刀'}, {U'礻', U'示'},
      {U'衤', U'衣'}, {U'灬', U'火'}, {U'纟', U'糸'}, {U'糹', U'糸'},
      {U'牜', U'牛'}, {U'罒', U'网'}, {U'罓', U'网'}, {U'耂', U'老'},
      {U'爫', U'爪'}, {U'攵', U'攴'}, {U'丬', U'爿'}, {U'冫', U'冰'},
      {U'乚', U'乙'}, {U'𧾷', U'足'}, {U'𤣩', U'玉'}, {U'⺮', U'竹'},
      {U'⺼', U'肉'},
  };
  return *kTable;
}

const CharMap& DefaultSemanticReplacements() {
  static const CharMap* const kTable = new CharMap{{U'疒', U'病'}};
  return *kTable;
}

std::string FlatSymbol::ToString() const {
  return is_operator() ? op().ToString() : component().ToString();
}

std::string FlatDecomposition::ToString() const {
  std::string out;
  for (const auto& symbol : symbols) out += symbol.ToString();
  return out;
}

NotDecomposableError::NotDecomposableError(char32_t character)
    : Error("no decomposition for " + EncodeUtf8(character) + " (" +
            FormatCodePointLabel(character) + ")"),
      character_(character) {}

namespace {

void CheckNoOperators(const CharMap& map) {
  for (const auto& [from, to] : map) {
    if (IdcOperator::IsOperator(from) || IdcOperator::IsOperator(to)) {
      throw ConfigError("IDC operator in a lookup table");
    }
  }
}

void CheckAcyclic(const CharMap& map) {
  for (const auto& [start, unused] : map) {
    std::set<char32_t> seen = {start};
    auto it = map.find(start);
    while (it != map.end()) {
      if (!seen.insert(it->second).second) {
        throw ConfigError("base-form table has a cycle through " +
                          EncodeUtf8(start) + " (" +
                          FormatCodePointLabel(start) + ")");
      }
      it = map.find(it->second);
    }
  }
}

bool IsSelfDecomposition(char32_t character, const DecompositionTree& tree) {
  return tree.is_leaf() && tree.component().is_code_point() &&
         tree.component().code_point() == character;
}

void CollectLeaves(const DecompositionTree& tree, bool with_idc,
                   std::vector<FlatSymbol>* out) {
  if (tree.is_leaf()) {
    out->emplace_back(tree.component());
    return;
  }
  if (with_idc) out->emplace_back(tree.op());
  for (const auto& child : tree.children()) CollectLeaves(child, with_idc, out);
}

}  // namespace

DecompositionDb::DecompositionDb()
    : base_forms_(DefaultBaseForms()),
      semantic_replacements_(DefaultSemanticReplacements()) {}

DecompositionDb::DecompositionDb(
    std::vector<std::pair<char32_t, DecompositionTree>> trees,
    CharMap base_forms, CharMap semantic_replacements)
    : base_forms_(std::move(base_forms)),
      semantic_replacements_(std::move(semantic_replacements)) {
  CheckNoOperators(base_forms_);
  CheckNoOperators(semantic_replacements_);
  CheckAcyclic(base_forms_);
  trees_.reserve(trees.size());
  for (auto& [character, tree] : trees) {
    if (IsSelfDecomposition(character, tree)) continue;
    trees_.emplace(character, std::move(tree));
  }
}

DecompositionDb DecompositionDb::FromRecords(std::span<const IdsRecord> records,
                                             CharMap base_forms,
                                             CharMap semantic_replacements) {
  std::vector<std::pair<char32_t, DecompositionTree>> trees;
  trees.reserve(records.size());
  std::set<char32_t> seen;
  for (const auto& record : records) {
    if (seen.insert(record.character).second) {
      trees.emplace_back(record.character, record.tree);
    }
  }
  return DecompositionDb(std::move(trees), std::move(base_forms),
                         std::move(semantic_replacements));
}

const DecompositionTree* DecompositionDb::Find(char32_t character) const {
  auto it = trees_.find(character);
  return it == trees_.end() ? nullptr : &it->second;
}

FlatDecomposition Flatten(const DecompositionTree& tree, bool with_idc) {
  FlatDecomposition flat;
  flat.with_idc = with_idc;
  CollectLeaves(tree, with_idc, &flat.symbols);
  return flat;
}

FlatDecomposition ExpandRecursive(const DecompositionDb& db, char32_t character,
                                  int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  const DecompositionTree* tree = db.Find(character);
  if (tree == nullptr) throw NotDecomposableError(character);

  FlatDecomposition flat = Flatten(*tree, /*with_idc=*/false);
  for (int level = 1; level < max_depth; ++level) {
    std::vector<FlatSymbol> next;
    next.reserve(flat.symbols.size() * 2);
    bool expanded = false;
    for (const auto& symbol : flat.symbols) {
      const Component& component = symbol.component();
      const DecompositionTree* sub =
          component.is_code_point() ? db.Find(component.code_point()) : nullptr;
      if (sub == nullptr) {
        next.push_back(symbol);
        continue;
      }
      CollectLeaves(*sub, /*with_idc=*/false, &next);
      expanded = true;
    }
    if (!expanded) break;
    flat.symbols = std::move(next);
  }
  return flat;
}

Component NormalizeBaseForm(const DecompositionDb& db, const Component& component) {
  if (!component.is_code_point()) return component;
  char32_t cp = component.code_point();
  const CharMap& table = db.base_forms();
  // Acyclic by construction, so this terminates.
  for (auto it = table.find(cp); it != table.end(); it = table.find(cp)) {
    cp = it->second;
  }
  return Component::OfCodePoint(cp);
}

std::optional<Component> SemanticReplacement(const DecompositionDb& db,
                                             const Component& component) {
  if (!component.is_code_point()) return std::nullopt;
  const CharMap& table = db.semantic_replacements();
  auto it = table.find(component.code_point());
  if (it == table.end()) return std::nullopt;
  return Component::OfCodePoint(it->second);
}

CharMap ParseCharMap(std::istream& in) {
  CharMap map;
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = StripCarriageReturn(raw);
    if (line.find_first_not_of(" \t") == std::string_view::npos ||
        line.starts_with("#") || line.starts_with(";;")) {
      continue;
    }
    const size_t tab = line.find('\t');
    std::vector<char32_t> from;
    std::vector<char32_t> to;
    if (tab == std::string_view::npos ||
        !TryDecodeUtf8(line.substr(0, tab), &from) ||
        !TryDecodeUtf8(line.substr(tab + 1), &to) || from.size() != 1 ||
        to.size() != 1 || IdcOperator::IsOperator(from[0]) ||
        IdcOperator::IsOperator(to[0])) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": expected <char><TAB><char>, got: " + std::string(line));
    }
    if (!map.emplace(from[0], to[0]).second) {
      throw FormatError("line " + std::to_string(line_no) + ": duplicate entry for " +
                        EncodeUtf8(from[0]));
    }
  }
  if (in.bad()) throw IoError("read error in character table");
  return map;
}

CharMap LoadCharMapFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open table file: " + path);
  return ParseCharMap(in);
}

void WriteCharMap(const CharMap& map, std::ostream& out) {
  for (const auto& [from, to] : map) {
    out << EncodeUtf8(from) << '\t' << EncodeUtf8(to) << '\n';
  }
}

}  // namespace subchar
