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

#include "subchar/schemes.h"

#include <algorithm>
#include <thread>

#include "subchar/errors.h"
#include "subchar/utf8.h"

namespace subchar {

bool SchemeConfig::is_inference() const {
  return kind == SchemeKind::kInferRemove || kind == SchemeKind::kInferDecomposeAll ||
         kind == SchemeKind::kInferDecomposeLeft;
}

void SchemeConfig::Validate() const {
  if (with_idc && kind != SchemeKind::kTrainDecompose) {
    throw ConfigError("with_idc requires the train scheme");
  }
  if (replace_radical && kind != SchemeKind::kInferDecomposeAll &&
      kind != SchemeKind::kInferDecomposeLeft) {
    throw ConfigError("replace_radical requires infer-all or infer-left");
  }
  if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
}

std::optional<SchemeConfig> SchemeFromName(std::string_view name) {
  SchemeConfig config;
  if (name == "baseline") {
    config.kind = SchemeKind::kBaseline;
  } else if (name == "train") {
    config.kind = SchemeKind::kTrainDecompose;
  } else if (name == "train-idc") {
    config.kind = SchemeKind::kTrainDecompose;
    config.with_idc = true;
  } else if (name == "infer-remove") {
    config.kind = SchemeKind::kInferRemove;
  } else if (name == "infer-all") {
    config.kind = SchemeKind::kInferDecomposeAll;
  } else if (name == "infer-left") {
    config.kind = SchemeKind::kInferDecomposeLeft;
  } else {
    return std::nullopt;
  }
  return config;
}

std::string SchemeName(const SchemeConfig& config) {
  switch (config.kind) {
    case SchemeKind::kBaseline:
      return "baseline";
    case SchemeKind::kTrainDecompose:
      return config.with_idc ? "train-idc" : "train";
    case SchemeKind::kInferRemove:
      return "infer-remove";
    case SchemeKind::kInferDecomposeAll:
      return "infer-all";
    case SchemeKind::kInferDecomposeLeft:
      return "infer-left";
  }
  return "unknown";
}

const char* CharActionName(CharAction action) {
  switch (action) {
    case CharAction::kDecomposed:
      return "decomposed";
    case CharAction::kRemoved:
      return "removed";
    case CharAction::kStillUnknown:
      return "still_unknown";
    case CharAction::kExcluded:
      return "excluded";
  }
  return "unknown";
}

void SchemeReport::Merge(const SchemeReport& other, size_t sentence_offset) {
  sentences += other.sentences;
  sentences_changed += other.sentences_changed;
  chars_decomposed += other.chars_decomposed;
  chars_removed += other.chars_removed;
  chars_still_unknown += other.chars_still_unknown;
  chars_excluded += other.chars_excluded;
  for (CharLogEntry entry : other.per_char_log) {
    entry.sentence += sentence_offset;
    per_char_log.push_back(std::move(entry));
  }
}

std::string SchemeReport::Summary() const {
  return "sentences=" + std::to_string(sentences) +
         " changed=" + std::to_string(sentences_changed) +
         " decomposed=" + std::to_string(chars_decomposed) +
         " removed=" + std::to_string(chars_removed) +
         " still_unknown=" + std::to_string(chars_still_unknown) +
         " excluded=" + std::to_string(chars_excluded);
}

namespace {

template <typename Fn>
void ForEachScalar(std::string_view sentence, Fn&& fn) {
  size_t pos = 0;
  while (pos < sentence.size()) {
    const size_t start = pos;
    char32_t cp;
    if (!DecodeOne(sentence, &pos, &cp)) {
      throw FormatError("invalid UTF-8 in sentence");
    }
    fn(cp, sentence.substr(start, pos - start));
  }
}

bool InVocab(const Vocabulary& vocab, const Component& component) {
  return component.is_code_point() && vocab.ContainsChar(component.code_point());
}

// In-vocabulary components of an unseen character, in IDS order.
std::vector<char32_t> SurvivingComponents(const DecompositionDb& db,
                                          const Vocabulary& vocab,
                                          const DecompositionTree& tree,
                                          bool replace_radical) {
  std::vector<char32_t> survivors;
  for (const FlatSymbol& symbol : Flatten(tree, /*with_idc=*/false).symbols) {
    Component component = NormalizeBaseForm(db, symbol.component());
    if (replace_radical && !InVocab(vocab, component)) {
      auto replacement = SemanticReplacement(db, component);
      if (!replacement) replacement = SemanticReplacement(db, symbol.component());
      if (replacement) component = *replacement;
    }
    if (InVocab(vocab, component)) survivors.push_back(component.code_point());
  }
  return survivors;
}

}  // namespace

std::string ApplyTrainingDecomposition(const DecompositionDb& db,
                                       std::string_view sentence, bool with_idc,
                                       int max_depth,
                                       const std::set<char32_t>& excluded) {
  std::string out;
  out.reserve(sentence.size() * 2);
  ForEachScalar(sentence, [&](char32_t cp, std::string_view bytes) {
    const DecompositionTree* tree = db.Find(cp);
    if (tree == nullptr || excluded.contains(cp)) {
      out.append(bytes);
    } else if (with_idc) {
      out += SerializeIds(*tree);
    } else {
      out += ExpandRecursive(db, cp, max_depth).ToString();
    }
  });
  return out;
}

SchemeResult ApplyInferenceScheme(const DecompositionDb& db, const Vocabulary& vocab,
                                  std::string_view sentence,
                                  const SchemeConfig& config) {
  if (!config.is_inference()) {
    throw ConfigError("not an inference scheme: " + SchemeName(config));
  }
  SchemeResult result;
  SchemeReport& report = result.report;
  report.sentences = 1;
  std::string& out = result.text;
  out.reserve(sentence.size());
  bool changed = false;

  ForEachScalar(sentence, [&](char32_t cp, std::string_view bytes) {
    if (IsWhitespace(cp) || vocab.ContainsChar(cp)) {
      out.append(bytes);
      return;
    }
    auto log = [&](CharAction action, std::string output) {
      report.per_char_log.push_back({1, cp, action, std::move(output)});
    };
    if (config.excluded.contains(cp)) {
      ++report.chars_excluded;
      log(CharAction::kExcluded, std::string(bytes));
      out.append(bytes);
      return;
    }
    const DecompositionTree* tree = db.Find(cp);
    const std::vector<char32_t> survivors =
        tree == nullptr
            ? std::vector<char32_t>{}
            : SurvivingComponents(db, vocab, *tree, config.replace_radical);
    if (survivors.empty()) {
      ++report.chars_still_unknown;
      log(CharAction::kStillUnknown, std::string(bytes));
      out.append(bytes);
      return;
    }
    changed = true;
    switch (config.kind) {
      case SchemeKind::kInferRemove:
        ++report.chars_removed;
        log(CharAction::kRemoved, "");
        break;
      case SchemeKind::kInferDecomposeAll: {
        const std::string text = EncodeUtf8(survivors);
        ++report.chars_decomposed;
        log(CharAction::kDecomposed, text);
        out += text;
        break;
      }
      case SchemeKind::kInferDecomposeLeft: {
        const std::string text = EncodeUtf8(survivors.front());
        ++report.chars_decomposed;
        log(CharAction::kDecomposed, text);
        out += text;
        break;
      }
      default:
        break;
    }
  });
  if (changed) report.sentences_changed = 1;
  return result;
}

SchemeResult ApplyScheme(const DecompositionDb& db, const Vocabulary& vocab,
                         std::string_view sentence, const SchemeConfig& config) {
  if (config.is_inference()) {
    return ApplyInferenceScheme(db, vocab, sentence, config);
  }
  SchemeResult result;
  result.report.sentences = 1;
  if (config.kind == SchemeKind::kBaseline) {
    result.text = std::string(sentence);
    return result;
  }
  ForEachScalar(sentence, [&](char32_t cp, std::string_view) {
    if (db.IsDecomposable(cp) && !config.excluded.contains(cp)) {
      ++result.report.chars_decomposed;
    }
  });
  result.text = ApplyTrainingDecomposition(db, sentence, config.with_idc,
                                           config.max_depth, config.excluded);
  if (result.text != sentence) result.report.sentences_changed = 1;
  return result;
}

CorpusResult PreprocessCorpus(const DecompositionDb& db, const Vocabulary& vocab,
                              std::span<const std::string> corpus,
                              const SchemeConfig& config, int num_threads) {
  config.Validate();
  CorpusResult result;
  result.lines.resize(corpus.size());
  const size_t workers = std::clamp<size_t>(
      num_threads < 1 ? 1 : static_cast<size_t>(num_threads), 1,
      std::max<size_t>(corpus.size(), 1));
  const size_t chunk = (corpus.size() + workers - 1) / workers;
  std::vector<SchemeReport> reports(workers);
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](size_t worker) {
    try {
      const size_t begin = worker * chunk;
      const size_t end = std::min(corpus.size(), begin + chunk);
      for (size_t i = begin; i < end; ++i) {
        SchemeResult r = ApplyScheme(db, vocab, corpus[i], config);
        result.lines[i] = std::move(r.text);
        reports[worker].Merge(r.report, i);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  for (const auto& report : reports) result.report.Merge(report, 0);
  return result;
}

SchemeReport PreprocessStream(const DecompositionDb& db, const Vocabulary& vocab,
                              std::istream& in, std::ostream& out,
                              const SchemeConfig& config, int num_threads,
                              size_t batch_lines) {
  SchemeReport total;
  std::vector<std::string> batch;
  batch.reserve(batch_lines);
  std::string line;
  auto flush = [&] {
    CorpusResult r = PreprocessCorpus(db, vocab, batch, config, num_threads);
    for (const auto& text : r.lines) out << text << '\n';
    total.Merge(r.report, total.sentences);
    batch.clear();
  };
  while (std::getline(in, line)) {
    batch.emplace_back(StripCarriageReturn(line));
    if (batch.size() >= batch_lines) flush();
  }
  if (in.bad()) throw IoError("read error in input corpus");
  if (!batch.empty()) flush();
  return total;
}

}  // namespace subchar
