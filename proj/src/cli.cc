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

#include "subchar/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "subchar/bpe.h"
#include "subchar/decomp_db.h"
#include "subchar/errors.h"
#include "subchar/ids.h"
#include "subchar/io.h"
#include "subchar/schemes.h"
#include "subchar/testset.h"
#include "subchar/utf8.h"
#include "subchar/vocab.h"

namespace subchar {
namespace {

// Output paths must have an existing parent directory.
const CLI::Validator kCreatableFile(
    [](std::string& path) -> std::string {
      const std::filesystem::path p(path);
      if (std::filesystem::is_directory(p)) return "Path is a directory: " + path;
      const auto parent = p.parent_path();
      if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        return "Parent directory does not exist: " + parent.string();
      }
      return "";
    },
    "CREATABLE_FILE");

const CLI::Validator kCreatableDir(
    [](std::string& path) -> std::string {
      const std::filesystem::path p(path);
      if (std::filesystem::exists(p) && !std::filesystem::is_directory(p)) {
        return "Not a directory: " + path;
      }
      const auto parent = p.parent_path();
      if (!parent.empty() && !std::filesystem::is_directory(parent)) {
        return "Parent directory does not exist: " + parent.string();
      }
      return "";
    },
    "CREATABLE_DIR");

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DbOptions {
  std::string ids;
  std::string base_forms;
  std::string replacements;
};

struct SchemeOptions {
  std::string scheme;
  std::string vocab;
  bool replace_radical = false;
  int max_depth = kDefaultMaxDepth;
  std::string exclude_chars;
};

struct IoOptions {
  std::string input;
  std::string output;
};

void AddDbOptions(CLI::App* app, DbOptions* opts, bool ids_required) {
  auto* ids = app->add_option("--ids", opts->ids, "CHISE-style IDS table")
                  ->check(CLI::ExistingFile);
  if (ids_required) ids->required();
  app->add_option("--base-forms", opts->base_forms,
                  "variant<TAB>base table replacing the built-in one")
      ->check(CLI::ExistingFile);
  app->add_option("--replacements", opts->replacements,
                  "radical<TAB>replacement table replacing the built-in one")
      ->check(CLI::ExistingFile);
}

void AddSchemeOptions(CLI::App* app, SchemeOptions* opts) {
  app->add_option("--vocab", opts->vocab, "model vocabulary, one symbol per line")
      ->check(CLI::ExistingFile);
  app->add_flag("--replace-radical", opts->replace_radical,
                "swap out-of-vocabulary radicals using the replacement table");
  app->add_option("--max-depth", opts->max_depth, "training expansion depth")
      ->check(CLI::PositiveNumber);
  app->add_option("--exclude-chars", opts->exclude_chars,
                  "characters never decomposed, one per line")
      ->check(CLI::ExistingFile);
}

void AddIoOptions(CLI::App* app, IoOptions* opts) {
  app->add_option("--input", opts->input, "input file (default: stdin)")
      ->check(CLI::ExistingFile);
  app->add_option("--output", opts->output, "output file (default: stdout)")
      ->check(kCreatableFile);
}

DecompositionDb LoadDb(const DbOptions& opts, std::ostream& err) {
  CharMap base_forms =
      opts.base_forms.empty() ? DefaultBaseForms() : LoadCharMapFile(opts.base_forms);
  CharMap replacements = opts.replacements.empty()
                             ? DefaultSemanticReplacements()
                             : LoadCharMapFile(opts.replacements);
  if (opts.ids.empty()) {
    return DecompositionDb({}, std::move(base_forms), std::move(replacements));
  }
  IdsFileResult parsed = LoadIdsFile(opts.ids);
  if (!parsed.diagnostics.empty()) {
    err << "ids: " << parsed.diagnostics.size() << " of " << parsed.data_lines
        << " lines skipped (run parse-ids for details)\n";
  }
  return DecompositionDb::FromRecords(parsed.records, std::move(base_forms),
                                      std::move(replacements));
}

std::set<char32_t> LoadCharList(const std::string& path) {
  std::set<char32_t> chars;
  const auto lines = ReadLines(path);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<char32_t> cps;
    if (!TryDecodeUtf8(lines[i], &cps) || cps.size() != 1) {
      throw FormatError(path + ":" + std::to_string(i + 1) +
                        ": expected exactly one character");
    }
    chars.insert(cps[0]);
  }
  return chars;
}

SchemeConfig BuildSchemeConfig(const SchemeOptions& opts) {
  auto config = SchemeFromName(opts.scheme);
  if (!config) {
    throw UsageError("--scheme: unknown scheme '" + opts.scheme +
                     "'; expected one of baseline, train, train-idc, infer-remove, "
                     "infer-all, infer-left");
  }
  config->replace_radical = opts.replace_radical;
  config->max_depth = opts.max_depth;
  try {
    config->Validate();
  } catch (const ConfigError& e) {
    throw UsageError(std::string("--replace-radical: ") + e.what());
  }
  if (config->is_inference() && opts.vocab.empty()) {
    throw UsageError("--vocab FILE is required for scheme " + opts.scheme);
  }
  if (!opts.exclude_chars.empty()) config->excluded = LoadCharList(opts.exclude_chars);
  return *config;
}

// Opens --input or falls back to the provided stream.
class InputSource {
 public:
  InputSource(const std::string& path, std::istream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot open " + path);
      stream_ = file_.get();
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_;
};

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw IoError("cannot create " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }
  void Close() {
    stream_->flush();
    if (!*stream_) throw IoError("write error");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int RunParseIds(const std::string& ids, const std::string& expr, std::istream& in,
                std::ostream& out, std::ostream& err) {
  if (!expr.empty()) {
    try {
      const DecompositionTree tree = ParseIds(expr);
      out << SerializeIds(tree) << '\t' << DebugString(tree) << '\n';
      return kExitOk;
    } catch (const IdsParseError& e) {
      err << "error:" << IdsErrorKindName(e.kind()) << " offset:" << e.offset()
          << " input:" << expr << '\n';
      return kExitDataError;
    }
  }
  InputSource source(ids, in);
  const IdsFileResult result = ParseIdsStream(source.get());
  for (const auto& record : result.records) {
    out << FormatCodePointLabel(record.character) << '\t'
        << EncodeUtf8(record.character) << '\t' << SerializeIds(record.tree) << '\n';
  }
  for (const auto& diagnostic : result.diagnostics) {
    err << diagnostic.ToString() << '\n';
  }
  err << "records=" << result.records.size()
      << " diagnostics=" << result.diagnostics.size()
      << " data_lines=" << result.data_lines << '\n';
  return kExitOk;
}

void WriteCharLog(const SchemeReport& report, const std::string& path) {
  std::vector<std::string> lines;
  lines.reserve(report.per_char_log.size());
  for (const auto& entry : report.per_char_log) {
    lines.push_back(std::to_string(entry.sentence) + '\t' + EncodeUtf8(entry.character) +
                    '\t' + FormatCodePointLabel(entry.character) + '\t' +
                    CharActionName(entry.action) + '\t' + entry.output);
  }
  WriteLines(path, lines);
}

}  // namespace

std::string VersionString() {
  return std::string("subchar ") + kToolkitVersion + " (tables v" +
         kDefaultTablesVersion + ": " + std::to_string(DefaultBaseForms().size()) +
         " base forms, " + std::to_string(DefaultSemanticReplacements().size()) +
         " semantic replacements)";
}

int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Sub-character decomposition toolkit for logographic NMT corpora",
               "subchar"};
  app.set_version_flag("--version", VersionString());
  app.require_subcommand(1);

  // parse-ids
  std::string ids_path;
  std::string ids_expr;
  auto* parse_ids = app.add_subcommand("parse-ids", "parse and normalize an IDS table");
  parse_ids->add_option("--ids", ids_path, "IDS table (default: stdin)")
      ->check(CLI::ExistingFile);
  parse_ids->add_option("--expr", ids_expr, "parse a single IDS expression");

  // decompose
  DbOptions decompose_db;
  SchemeOptions decompose_scheme;
  decompose_scheme.scheme = "train";
  std::string decompose_text;
  auto* decompose =
      app.add_subcommand("decompose", "decompose characters (--char) or stdin lines");
  AddDbOptions(decompose, &decompose_db, /*ids_required=*/true);
  decompose->add_option("--scheme", decompose_scheme.scheme, "scheme name");
  AddSchemeOptions(decompose, &decompose_scheme);
  decompose->add_option("--char", decompose_text, "text to decompose");

  // learn-bpe
  IoOptions learn_io;
  int num_merges = 0;
  std::string learn_marker = kDefaultContinuationMarker;
  auto* learn = app.add_subcommand("learn-bpe", "learn BPE merges from a corpus");
  AddIoOptions(learn, &learn_io);
  learn->add_option("--merges", num_merges, "number of merges")
      ->required()
      ->check(CLI::NonNegativeNumber);
  learn->add_option("--marker", learn_marker, "continuation marker");

  // apply-bpe
  IoOptions apply_io;
  std::string bpe_model_path;
  auto* apply = app.add_subcommand("apply-bpe", "segment a corpus with a BPE model");
  AddIoOptions(apply, &apply_io);
  apply->add_option("--model", bpe_model_path, "BPE model file")
      ->required()
      ->check(CLI::ExistingFile);

  // build-vocab
  IoOptions vocab_io;
  std::string vocab_bpe_path;
  std::string vocab_id;
  auto* build_vocab = app.add_subcommand("build-vocab", "write the corpus vocabulary");
  AddIoOptions(build_vocab, &vocab_io);
  build_vocab->add_option("--bpe", vocab_bpe_path, "also add this model's subwords")
      ->check(CLI::ExistingFile);
  build_vocab->add_option("--id", vocab_id, "provenance label");

  // preprocess
  DbOptions pre_db;
  SchemeOptions pre_scheme;
  IoOptions pre_io;
  int pre_threads = 1;
  std::string report_path;
  std::string log_path;
  auto* preprocess = app.add_subcommand("preprocess", "apply a scheme to a corpus");
  AddDbOptions(preprocess, &pre_db, /*ids_required=*/false);
  preprocess->add_option("--scheme", pre_scheme.scheme, "scheme name")->required();
  AddSchemeOptions(preprocess, &pre_scheme);
  AddIoOptions(preprocess, &pre_io);
  preprocess->add_option("--threads", pre_threads, "worker threads")
      ->check(CLI::PositiveNumber);
  preprocess->add_option("--report", report_path, "write the summary line here")
      ->check(kCreatableFile);
  preprocess->add_option("--log", log_path, "per-character action log")
      ->check(kCreatableFile);

  // build-unseen-set
  DbOptions split_db;
  std::string split_src;
  std::string split_tgt;
  std::string split_tsv;
  std::string split_mode = "frequency";
  int64_t max_count = 2;
  double ratio = 3.5;
  std::string split_vocab;
  std::string out_dir;
  int split_threads = 1;
  auto* build_split =
      app.add_subcommand("build-unseen-set", "hold out an unseen-character test set");
  AddDbOptions(build_split, &split_db, /*ids_required=*/true);
  auto* src_opt = build_split->add_option("--src", split_src, "source side")
                      ->check(CLI::ExistingFile);
  auto* tgt_opt = build_split->add_option("--tgt", split_tgt, "target side")
                      ->check(CLI::ExistingFile);
  auto* tsv_opt = build_split->add_option("--tsv", split_tsv, "source<TAB>target file")
                      ->check(CLI::ExistingFile);
  src_opt->needs(tgt_opt);
  tgt_opt->needs(src_opt);
  tsv_opt->excludes(src_opt)->excludes(tgt_opt);
  build_split->add_option("--mode", split_mode, "frequency or vocab")
      ->check(CLI::IsMember({"frequency", "vocab"}));
  build_split->add_option("--max-count", max_count, "rarity threshold")
      ->check(CLI::PositiveNumber);
  build_split->add_option("--ratio", ratio, "length ratio limit");
  build_split->add_option("--vocab", split_vocab, "reference vocabulary (vocab mode)")
      ->check(CLI::ExistingFile);
  build_split->add_option("--out-dir", out_dir, "output directory")
      ->required()
      ->check(kCreatableDir);
  build_split->add_option("--threads", split_threads, "worker threads")
      ->check(CLI::PositiveNumber);

  // audit-split
  DbOptions audit_db;
  std::string audit_dir;
  auto* audit = app.add_subcommand("audit-split", "verify a held-out split");
  AddDbOptions(audit, &audit_db, /*ids_required=*/true);
  audit->add_option("--dir", audit_dir, "directory written by build-unseen-set")
      ->required()
      ->check(CLI::ExistingDirectory);

  // dump-tables
  std::string table_name;
  std::string table_output;
  auto* dump = app.add_subcommand("dump-tables", "print a built-in lookup table");
  dump->add_option("--table", table_name, "base-forms or replacements")
      ->required()
      ->check(CLI::IsMember({"base-forms", "replacements"}));
  dump->add_option("--output", table_output, "output file (default: stdout)")
      ->check(kCreatableFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(parse_ids)) {
      return RunParseIds(ids_path, ids_expr, in, out, err);
    }

    if (app.got_subcommand(decompose)) {
      const SchemeConfig config = BuildSchemeConfig(decompose_scheme);
      const DecompositionDb db = LoadDb(decompose_db, err);
      const Vocabulary vocab =
          decompose_scheme.vocab.empty() ? Vocabulary() : Vocabulary::Load(decompose_scheme.vocab);
      if (!decompose_text.empty()) {
        out << ApplyScheme(db, vocab, decompose_text, config).text << '\n';
      } else {
        PreprocessStream(db, vocab, in, out, config);
      }
      return kExitOk;
    }

    if (app.got_subcommand(learn)) {
      InputSource source(learn_io.input, in);
      const auto corpus = ReadLines(source.get());
      OutputSink sink(learn_io.output, out);
      LearnBpe(corpus, num_merges, learn_marker).Write(sink.get());
      sink.Close();
      return kExitOk;
    }

    if (app.got_subcommand(apply)) {
      const BpeModel model = BpeModel::Load(bpe_model_path);
      InputSource source(apply_io.input, in);
      OutputSink sink(apply_io.output, out);
      std::string line;
      while (std::getline(source.get(), line)) {
        sink.get() << ApplyBpe(model, StripCarriageReturn(line)) << '\n';
      }
      sink.Close();
      return kExitOk;
    }

    if (app.got_subcommand(build_vocab)) {
      InputSource source(vocab_io.input, in);
      Vocabulary vocab(vocab_id.empty() ? vocab_io.input : vocab_id);
      std::string line;
      while (std::getline(source.get(), line)) vocab.AddText(line);
      if (!vocab_bpe_path.empty()) {
        const size_t skipped = vocab.AttachBpe(BpeModel::Load(vocab_bpe_path));
        if (skipped > 0) {
          err << "build-vocab: skipped " << skipped
              << " subwords with characters outside the corpus\n";
        }
      }
      OutputSink sink(vocab_io.output, out);
      vocab.Write(sink.get());
      sink.Close();
      return kExitOk;
    }

    if (app.got_subcommand(preprocess)) {
      const SchemeConfig config = BuildSchemeConfig(pre_scheme);
      if (config.kind != SchemeKind::kBaseline && pre_db.ids.empty()) {
        throw UsageError("--ids FILE is required for scheme " + pre_scheme.scheme);
      }
      const DecompositionDb db = LoadDb(pre_db, err);
      const Vocabulary vocab =
          pre_scheme.vocab.empty() ? Vocabulary() : Vocabulary::Load(pre_scheme.vocab);
      InputSource source(pre_io.input, in);
      OutputSink sink(pre_io.output, out);
      const SchemeReport report =
          PreprocessStream(db, vocab, source.get(), sink.get(), config, pre_threads);
      sink.Close();
      err << report.Summary() << '\n';
      if (!report_path.empty()) WriteLines(report_path, std::vector{report.Summary()});
      if (!log_path.empty()) WriteCharLog(report, log_path);
      return kExitOk;
    }

    if (app.got_subcommand(build_split)) {
      if (split_tsv.empty() && split_src.empty()) {
        throw UsageError("either --tsv FILE or --src FILE --tgt FILE is required");
      }
      HoldoutConfig config;
      config.max_count = max_count;
      config.length_ratio_max = ratio;
      if (split_mode == "vocab") {
        if (split_vocab.empty()) throw UsageError("--vocab FILE is required in vocab mode");
        config.mode = HoldoutMode::kVocabularyMembership;
        config.reference_vocab = Vocabulary::Load(split_vocab);
      } else if (!split_vocab.empty()) {
        throw UsageError("--vocab is only valid with --mode vocab");
      }
      try {
        config.Validate();
      } catch (const ConfigError& e) {
        throw UsageError(std::string("--ratio: ") + e.what());
      }
      const DecompositionDb db = LoadDb(split_db, err);
      const auto bitext =
          split_tsv.empty() ? ReadBitext(split_src, split_tgt) : ReadBitextTsv(split_tsv);
      const SplitResult result = BuildUnseenSplit(bitext, db, config, split_threads);
      WriteSplit(result, out_dir);
      for (const auto& warning : result.warnings) err << "warning: " << warning << '\n';
      err << "pairs=" << bitext.size() << " train=" << result.train.size()
          << " unseen=" << result.unseen_test.size()
          << " rejected_by_ratio=" << result.rejected_by_ratio
          << " triggers=" << result.trigger_chars.size() << '\n';
      return kExitOk;
    }

    if (app.got_subcommand(audit)) {
      const DecompositionDb db = LoadDb(audit_db, err);
      const AuditReport report = AuditSplit(ReadSplit(audit_dir), db);
      for (const auto& trigger : report.triggers) {
        out << EncodeUtf8(trigger.character) << '\t'
            << FormatCodePointLabel(trigger.character)
            << "\tunseen=" << trigger.unseen_sentences
            << "\ttrain=" << trigger.train_sentences
            << "\tdecomposable=" << (trigger.decomposable ? "yes" : "no") << '\n';
      }
      for (const auto& violation : report.violations) {
        err << "violation: " << violation.ToString() << '\n';
      }
      err << (report.ok() ? "audit: pass" : "audit: FAIL") << " violations="
          << report.violations.size() << '\n';
      return report.ok() ? kExitOk : kExitDataError;
    }

    if (app.got_subcommand(dump)) {
      OutputSink sink(table_output, out);
      sink.get() << "# " << table_name << " v" << kDefaultTablesVersion << '\n';
      WriteCharMap(table_name == "base-forms" ? DefaultBaseForms()
                                              : DefaultSemanticReplacements(),
                   sink.get());
      sink.Close();
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace subchar
