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

#include "subchar/ids.h"

#include <fstream>
#include <stdexcept>

#include "subchar/utf8.h"

namespace subchar {

std::optional<IdcOperator> IdcOperator::FromCodePoint(char32_t cp) {
  if (!IsOperator(cp)) return std::nullopt;
  return IdcOperator(cp);
}

int IdcOperator::arity() const {
  return (code_point_ == 0x2FF2 || code_point_ == 0x2FF3) ? 3 : 2;
}

std::string IdcOperator::ToString() const { return EncodeUtf8(code_point_); }

Component Component::OfCodePoint(char32_t cp) {
  if (IdcOperator::IsOperator(cp)) {
    throw std::invalid_argument("IDC operator used as a component: " +
                                FormatCodePointLabel(cp));
  }
  return Component(cp);
}

Component Component::OfEntity(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty entity name");
  std::vector<char32_t> cps;
  if (!TryDecodeUtf8(name, &cps)) {
    throw std::invalid_argument("entity name is not UTF-8");
  }
  for (char32_t cp : cps) {
    if (IsWhitespace(cp) || cp == U';' || cp == U'&') {
      throw std::invalid_argument("bad character in entity name: " + name);
    }
  }
  return Component(std::move(name));
}

std::string Component::ToString() const {
  if (is_code_point()) return EncodeUtf8(code_point());
  return "&" + entity_name() + ";";
}

DecompositionTree DecompositionTree::Leaf(Component component) {
  return DecompositionTree(std::move(component));
}

DecompositionTree DecompositionTree::Node(
    IdcOperator op, std::vector<DecompositionTree> children) {
  if (static_cast<int>(children.size()) != op.arity()) {
    throw std::invalid_argument("operator " + op.ToString() + " expects " +
                                std::to_string(op.arity()) + " children, got " +
                                std::to_string(children.size()));
  }
  return DecompositionTree(Branch{op, std::move(children)});
}

int DecompositionTree::depth() const {
  if (is_leaf()) return 0;
  int deepest = 0;
  for (const auto& child : children()) deepest = std::max(deepest, child.depth());
  return deepest + 1;
}

bool operator==(const DecompositionTree& a, const DecompositionTree& b) {
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.component() == b.component();
  return a.op() == b.op() && a.children() == b.children();
}

const char* IdsErrorKindName(IdsErrorKind kind) {
  switch (kind) {
    case IdsErrorKind::kEmptyInput:
      return "EmptyInput";
    case IdsErrorKind::kArityError:
      return "ArityError";
    case IdsErrorKind::kTrailingInput:
      return "TrailingInput";
    case IdsErrorKind::kUnknownToken:
      return "UnknownToken";
  }
  return "Unknown";
}

namespace {

// Scalars that may not appear as components: controls, whitespace, the
// IDCs added after Unicode 3.0 (U+2FFC..U+2FFF, U+31EF) and the ideographic
// variation indicator.
bool IsRejectedToken(char32_t cp) {
  return cp < 0x20 || (cp >= 0x7F && cp < 0xA0) || IsWhitespace(cp) ||
         (cp >= 0x2FFC && cp <= 0x2FFF) || cp == 0x31EF || cp == 0x303E;
}

class IdsParser {
 public:
  explicit IdsParser(std::vector<char32_t> input) : input_(std::move(input)) {}

  DecompositionTree ParseAll() {
    if (input_.empty()) {
      throw IdsParseError(IdsErrorKind::kEmptyInput, 0, "empty IDS");
    }
    DecompositionTree tree = ParseTree();
    if (pos_ != input_.size()) {
      throw IdsParseError(IdsErrorKind::kTrailingInput, pos_,
                          "unexpected input after a complete IDS at offset " +
                              std::to_string(pos_));
    }
    return tree;
  }

 private:
  DecompositionTree ParseTree() {
    if (pos_ >= input_.size()) {
      throw IdsParseError(IdsErrorKind::kArityError, pos_,
                          "operator is missing operands");
    }
    const char32_t cp = input_[pos_];
    if (auto op = IdcOperator::FromCodePoint(cp)) {
      ++pos_;
      std::vector<DecompositionTree> children;
      children.reserve(op->arity());
      for (int i = 0; i < op->arity(); ++i) children.push_back(ParseTree());
      return DecompositionTree::Node(*op, std::move(children));
    }
    if (cp == U'&') return DecompositionTree::Leaf(ParseEntity());
    if (IsRejectedToken(cp)) {
      throw IdsParseError(IdsErrorKind::kUnknownToken, pos_,
                          "unexpected " + FormatCodePointLabel(cp) +
                              " at offset " + std::to_string(pos_));
    }
    ++pos_;
    return DecompositionTree::Leaf(Component::OfCodePoint(cp));
  }

  Component ParseEntity() {
    const size_t start = pos_;
    size_t end = start + 1;
    while (end < input_.size() && input_[end] != U';') {
      const char32_t cp = input_[end];
      if (cp == U'&' || IsRejectedToken(cp) || IdcOperator::IsOperator(cp)) {
        break;
      }
      ++end;
    }
    if (end >= input_.size() || input_[end] != U';' || end == start + 1) {
      throw IdsParseError(IdsErrorKind::kUnknownToken, start,
                          "malformed entity reference at offset " +
                              std::to_string(start));
    }
    std::string name;
    for (size_t i = start + 1; i < end; ++i) AppendUtf8(input_[i], &name);
    pos_ = end + 1;
    return Component::OfEntity(std::move(name));
  }

  std::vector<char32_t> input_;
  size_t pos_ = 0;
};

void SerializeTo(const DecompositionTree& tree, std::string* out) {
  if (tree.is_leaf()) {
    out->append(tree.component().ToString());
    return;
  }
  out->append(tree.op().ToString());
  for (const auto& child : tree.children()) SerializeTo(child, out);
}

void DebugTo(const DecompositionTree& tree, std::string* out) {
  if (tree.is_leaf()) {
    out->append(tree.component().ToString());
    return;
  }
  out->append(tree.op().ToString());
  out->push_back('(');
  for (size_t i = 0; i < tree.children().size(); ++i) {
    if (i > 0) out->push_back(' ');
    DebugTo(tree.children()[i], out);
  }
  out->push_back(')');
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Removes the source annotations that surround an IDS alternative:
// "⿰魚弱[GTJ]" and "^⿰魚弱$(GTJ)" both become "⿰魚弱".
std::string_view StripSourceTags(std::string_view ids) {
  if (!ids.empty() && ids.front() == '^') {
    const size_t dollar = ids.rfind('$');
    if (dollar != std::string_view::npos) {
      return ids.substr(1, dollar - 1);
    }
  }
  if (!ids.empty() && ids.back() == ']') {
    const size_t open = ids.rfind('[');
    if (open != std::string_view::npos && open > 0) {
      return ids.substr(0, open);
    }
  }
  return ids;
}

bool IsComment(std::string_view line) {
  return line.starts_with(";;") || line.starts_with("#");
}

bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::optional<char32_t> ParseLabel(std::string_view label) {
  if (!label.starts_with("U+") && !label.starts_with("U-")) return std::nullopt;
  label.remove_prefix(2);
  if (label.empty() || label.size() > 8) return std::nullopt;
  char32_t value = 0;
  for (char c : label) {
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else {
      return std::nullopt;
    }
    value = value * 16 + digit;
  }
  return value;
}

void ParseLine(std::string_view raw, size_t line_no, IdsFileResult* result) {
  std::string_view line = StripCarriageReturn(raw);
  if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
  if (IsBlank(line) || IsComment(line)) return;
  ++result->data_lines;
  auto report = [&](std::string kind) {
    result->diagnostics.push_back({line_no, std::move(kind), std::string(line)});
  };
  std::vector<char32_t> scratch;
  if (!TryDecodeUtf8(line, &scratch)) {
    report("InvalidUtf8");
    return;
  }
  const auto fields = SplitTabs(line);
  if (fields.size() < 3 || fields[2].empty()) {
    report("MalformedLine");
    return;
  }
  const auto character = DecodeUtf8(fields[1]);
  const auto label = ParseLabel(fields[0]);
  if (character.size() != 1 || !label || *label != character[0]) {
    report("BadCharacter");
    return;
  }
  try {
    result->records.push_back(
        {character[0], ParseIds(StripSourceTags(fields[2])), line_no});
  } catch (const IdsParseError& e) {
    report(IdsErrorKindName(e.kind()));
  } catch (const std::invalid_argument&) {
    report("MalformedLine");
  }
}

}  // namespace

DecompositionTree ParseIds(std::string_view expr) {
  std::vector<char32_t> cps;
  if (!TryDecodeUtf8(expr, &cps)) {
    throw IdsParseError(IdsErrorKind::kUnknownToken, 0, "invalid UTF-8 in IDS");
  }
  return IdsParser(std::move(cps)).ParseAll();
}

std::string SerializeIds(const DecompositionTree& tree) {
  std::string out;
  SerializeTo(tree, &out);
  return out;
}

std::string DebugString(const DecompositionTree& tree) {
  std::string out;
  DebugTo(tree, &out);
  return out;
}

std::string IdsDiagnostic::ToString() const {
  return "line:" + std::to_string(line) + " error:" + kind + " input:" + input;
}

IdsFileResult ParseIdsLines(std::span<const std::string> lines) {
  IdsFileResult result;
  for (size_t i = 0; i < lines.size(); ++i) ParseLine(lines[i], i + 1, &result);
  return result;
}

IdsFileResult ParseIdsStream(std::istream& in) {
  IdsFileResult result;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) ParseLine(line, ++line_no, &result);
  if (in.bad()) throw IoError("read error while parsing IDS data");
  return result;
}

IdsFileResult LoadIdsFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open IDS file: " + path);
  return ParseIdsStream(in);
}

}  // namespace subchar
