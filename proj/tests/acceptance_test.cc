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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bpe_oracle.h"
#include "split_fixtures.h"
#include "subchar/bpe.h"
#include "subchar/cli.h"
#include "subchar/decomp_db.h"
#include "subchar/ids.h"
#include "subchar/schemes.h"
#include "subchar/testset.h"
#include "subchar/utf8.h"
#include "subchar/vocab.h"
#include "test_util.h"

namespace subchar {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void Expect(bool ok, const std::string& why) {
    if (!ok) Fail(why);
  }
};

const std::vector<std::string>& InferenceSchemes() {
  static const std::vector<std::string> kNames = {"infer-remove", "infer-all",
                                                  "infer-left"};
  return kNames;
}

std::vector<SchemeConfig> AllInferenceConfigs() {
  std::vector<SchemeConfig> configs;
  for (const auto& name : InferenceSchemes()) {
    configs.push_back(*SchemeFromName(name));
    if (name != "infer-remove") {
      configs.push_back(*SchemeFromName(name));
      configs.back().replace_radical = true;
    }
  }
  return configs;
}

std::string ConfigLabel(const SchemeConfig& config) {
  return SchemeName(config) + (config.replace_radical ? "+replace" : "");
}

const DecompositionDb& RealDb() {
  static const DecompositionDb db =
      DecompositionDb::FromRecords(LoadIdsFile(SUBCHAR_REAL_IDS_FILE).records);
  return db;
}

Outcome Criterion1() {
  Outcome o;
  const auto start = Clock::now();
  const auto db = testing::MakeDb({{U'鰯', "⿰魚弱"}, {U'瘡', "⿸疒倉"}},
                                  DefaultBaseForms(), CharMap{{U'疒', U'病'}});
  const Vocabulary vocab =
      BuildCharVocab(std::vector<std::string>{"魚 弱 倉 病 赤 斑 が 油"});
  o.Expect(!vocab.ContainsChar(U'疒'), "fixture vocabulary contains 疒");

  struct Row {
    const char* scheme;
    bool replace;
    const char* sardine;
    const char* sores;
  };
  const Row rows[] = {
      {"baseline", false, "鰯", "瘡"},
      {"train", false, "魚弱", "疒倉"},
      {"train-idc", false, "⿰魚弱", "⿸疒倉"},
      {"infer-remove", false, "", ""},
      {"infer-all", false, "魚弱", "倉"},
      {"infer-left", false, "魚", "倉"},
      {"infer-all", true, "魚弱", "病倉"},
      {"infer-left", true, "魚", "病"},
  };
  int rows_ok = 0;
  for (const Row& row : rows) {
    SchemeConfig config = *SchemeFromName(row.scheme);
    config.replace_radical = row.replace;
    const std::string a = ApplyScheme(db, vocab, "鰯", config).text;
    const std::string b = ApplyScheme(db, vocab, "瘡", config).text;
    const std::string label = ConfigLabel(config);
    if (a == row.sardine && b == row.sores) {
      ++rows_ok;
    } else {
      o.Fail(label + ": got '" + a + "' '" + b + "', want '" + row.sardine + "' '" +
             row.sores + "'");
    }
  }
  // The baseline leaves both characters in place; the model sees them as
  // unknown symbols.
  o.Expect(IsUnseen(vocab, U'鰯') && IsUnseen(vocab, U'瘡'),
           "baseline characters are in the vocabulary");
  const double seconds = SecondsSince(start);
  o.Expect(seconds < 1.0, "runtime " + std::to_string(seconds) + "s");
  if (o.pass) {
    o.detail = std::to_string(rows_ok) + "/8 rows exact, " + std::to_string(seconds) + "s";
  }
  return o;
}

Outcome Criterion2() {
  Outcome o;
  const auto db = testing::MakeDb(
      {{U'森', "⿱木林"}, {U'林', "⿰木木"}, {U'鰯', "⿰魚弱"}, {U'校', "⿰木交"}});
  const std::pair<char32_t, const char*> want[] = {
      {U'森', "木木木"}, {U'鰯', "魚弱"}, {U'校', "木交"}};
  for (const auto& [ch, expansion] : want) {
    const std::string got = ExpandRecursive(db, ch, kDefaultMaxDepth).ToString();
    o.Expect(got == expansion,
             EncodeUtf8(ch) + " -> '" + got + "', want '" + expansion + "'");
  }
  // The fixture entries agree with the real table at the first level.
  for (const auto& [ch, ids] : std::vector<std::pair<char32_t, const char*>>{
           {U'森', "⿱木林"}, {U'林', "⿰木木"}, {U'鰯', "⿰魚弱"}, {U'校', "⿰木交"}}) {
    const DecompositionTree* tree = RealDb().Find(ch);
    o.Expect(tree != nullptr && SerializeIds(*tree) == ids,
             "real table entry for " + EncodeUtf8(ch) + " is not " + ids);
  }
  if (o.pass) o.detail = "森→木木木 鰯→魚弱 校→木交; entries match the real table";
  return o;
}

Outcome Criterion3() {
  Outcome o;
  const DecompositionDb& db = RealDb();
  std::mt19937 rng(2024);
  // Vocabulary: a random sample of table characters plus kana and
  // punctuation, so that many vocabulary characters are decomposable.
  const auto records = LoadIdsFile(SUBCHAR_REAL_IDS_FILE).records;
  std::u32string alphabet = U"のがをにはでとしたるてい、。「」abc123";
  std::uniform_int_distribution<size_t> pick_record(0, records.size() - 1);
  for (int i = 0; i < 3000; ++i) alphabet += records[pick_record(rng)].character;
  const Vocabulary vocab = BuildCharVocab(std::vector<std::string>{EncodeUtf8(std::vector<char32_t>(alphabet.begin(), alphabet.end()))});

  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::uniform_int_distribution<int> length(1, 40);
  std::uniform_int_distribution<int> percent(0, 99);
  std::vector<std::string> sentences;
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const int n = length(rng);
    for (int j = 0; j < n; ++j) {
      if (j > 0 && percent(rng) < 20) s += ' ';
      AppendUtf8(alphabet[pick(rng)], &s);
    }
    sentences.push_back(s);
  }
  size_t violations = 0;
  size_t checks = 0;
  for (const SchemeConfig& config : AllInferenceConfigs()) {
    for (const auto& s : sentences) {
      ++checks;
      const SchemeResult r = ApplyInferenceScheme(db, vocab, s, config);
      if (r.text != s || r.report.sentences_changed != 0) {
        if (violations++ == 0) o.Fail(ConfigLabel(config) + " changed '" + s + "'");
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(checks) + " sentence/scheme checks, 0 violations";
  } else {
    o.detail += " (" + std::to_string(violations) + " violations)";
  }
  return o;
}

Outcome Criterion4() {
  Outcome o;
  const auto start = Clock::now();
  testing::TreeGenerator gen(4);
  std::set<char32_t> operators_seen;
  int max_depth_seen = 0;
  for (int i = 0; i < 10000; ++i) {
    const DecompositionTree tree = gen.Tree(6);
    max_depth_seen = std::max(max_depth_seen, tree.depth());
    std::function<void(const DecompositionTree&)> collect = [&](const DecompositionTree& t) {
      if (t.is_leaf()) return;
      operators_seen.insert(t.op().code_point());
      for (const auto& c : t.children()) collect(c);
    };
    collect(tree);
    const std::string text = SerializeIds(tree);
    try {
      if (!(ParseIds(text) == tree)) {
        o.Fail("round-trip mismatch for " + text);
        break;
      }
    } catch (const IdsParseError& e) {
      o.Fail("parse error on generated tree " + text + ": " + e.what());
      break;
    }
  }
  o.Expect(operators_seen.size() == 12,
           "only " + std::to_string(operators_seen.size()) + " operators generated");
  o.Expect(max_depth_seen <= 6, "generated depth " + std::to_string(max_depth_seen));

  size_t records = 0;
  size_t diagnostics = 0;
  size_t data_lines = 0;
  try {
    const IdsFileResult result = LoadIdsFile(SUBCHAR_REAL_IDS_FILE);
    records = result.records.size();
    diagnostics = result.diagnostics.size();
    data_lines = result.data_lines;
  } catch (const std::exception& e) {
    o.Fail(std::string("real table failed to load: ") + e.what());
  }
  const double rate = data_lines ? static_cast<double>(diagnostics) / data_lines : 1.0;
  o.Expect(records > 80000, "only " + std::to_string(records) + " records");
  o.Expect(rate < 0.01, "diagnostic rate " + std::to_string(rate));
  const double seconds = SecondsSince(start);
  o.Expect(seconds < 10.0, "runtime " + std::to_string(seconds) + "s");
  if (o.pass) {
    o.detail = "10000 trees, 12 operators; real table " + std::to_string(records) +
               " records, " + std::to_string(diagnostics) + " diagnostics; " +
               std::to_string(seconds) + "s";
  }
  return o;
}

Outcome Criterion5() {
  Outcome o;
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> merges_dist(1, 60);
  size_t sentences = 0;
  for (int trial = 0; trial < 50 && o.pass; ++trial) {
    const auto corpus = testing::RandomBpeCorpus(rng, 100);
    const int n = merges_dist(rng);
    const BpeModel model = LearnBpe(corpus, n);
    const testing::OracleBpe oracle = testing::BruteForceBpe(corpus, n);
    if (model.merges() != oracle.merges) {
      o.Fail("trial " + std::to_string(trial) + ": merge lists differ (" +
             std::to_string(model.merges().size()) + " vs " +
             std::to_string(oracle.merges.size()) + ")");
      break;
    }
    for (const auto& [word, symbols] : oracle.segmentation) {
      std::vector<std::string> got = model.SegmentWord(word);
      if (got != symbols) {
        o.Fail("trial " + std::to_string(trial) + ": segmentation of " + word + " differs");
        break;
      }
    }
    for (const auto& sentence : corpus) {
      ++sentences;
      if (StripBpe(ApplyBpe(model, sentence), model.continuation_marker()) != sentence) {
        o.Fail("apply/strip changed '" + sentence + "'");
        break;
      }
    }
  }
  if (o.pass) {
    o.detail = "50 corpora match the oracle; " + std::to_string(sentences) +
               " sentences round-trip";
  }
  return o;
}

HoldoutConfig FrequencyConfig() {
  HoldoutConfig config;
  config.max_count = 2;
  return config;
}

Outcome Criterion6() {
  Outcome o;
  double worst = 0;
  size_t unseen_total = 0;
  for (uint32_t seed = 100; seed < 120 && o.pass; ++seed) {
    const testing::Planted planted = testing::MakePlantedCorpus(seed, 1000);
    const auto start = Clock::now();
    const SplitResult result = BuildUnseenSplit(planted.bitext, planted.db, FrequencyConfig());
    const AuditReport audit = AuditSplit(result, planted.db);
    const double seconds = SecondsSince(start);
    worst = std::max(worst, seconds);
    const std::string tag = "corpus " + std::to_string(seed) + ": ";
    o.Expect(seconds < 5.0, tag + "runtime " + std::to_string(seconds) + "s");
    o.Expect(audit.ok(), tag + (audit.ok() ? "" : audit.violations[0].ToString()));

    // Cross-check with the independent reference split.
    const SplitResult ref =
        testing::ReferenceSplit(planted.bitext, planted.db, 2, 3.5);
    o.Expect(ref.train == result.train && ref.unseen_test == result.unseen_test &&
                 ref.trigger_chars == result.trigger_chars,
             tag + "differs from the reference split");
    o.Expect(!result.unseen_test.empty(), tag + "no unseen sentences planted");
    unseen_total += result.unseen_test.size();
    if (result.unseen_test.empty()) continue;

    SplitResult leaked = result;
    leaked.train.push_back(result.unseen_test.front());
    const AuditReport leak = AuditSplit(leaked, planted.db);
    o.Expect(!leak.ok() &&
                 leak.violations[0].kind == AuditViolation::Kind::kTriggerInTrain,
             tag + "re-inserted trigger not caught");

    SplitResult undecomposable = result;
    undecomposable.trigger_chars.insert(U'鱒');
    undecomposable.unseen_test.push_back({"鱒", "trout"});
    const AuditReport bad = AuditSplit(undecomposable, planted.db);
    bool caught = false;
    for (const auto& v : bad.violations) {
      caught = caught || v.kind == AuditViolation::Kind::kUndecomposableTrigger;
    }
    o.Expect(caught, tag + "undecomposable trigger not caught");
  }
  if (o.pass) {
    o.detail = "20 corpora audited, " + std::to_string(unseen_total) +
               " unseen pairs, mutations caught; slowest " + std::to_string(worst) + "s";
  }
  return o;
}

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int RunQuiet(const std::vector<std::string>& args, std::string* err) {
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream errs;
  const int code = RunCli(args, in, out, errs);
  *err = errs.str();
  return code;
}

Outcome Criterion7() {
  Outcome o;
  const auto dir = testing::MakeTempDir("acceptance");
  const std::string src = (dir / "corpus.src").string();
  const std::string tgt = (dir / "corpus.tgt").string();
  const std::string vocab = (dir / "vocab.txt").string();
  {
    const testing::Planted planted = testing::MakePlantedCorpus(7, 5000);
    std::ofstream s(src, std::ios::binary);
    std::ofstream t(tgt, std::ios::binary);
    for (const auto& pair : planted.bitext) {
      s << pair.source << '\n';
      t << pair.target << '\n';
    }
    std::ofstream(vocab, std::ios::binary) << "木\n口\n水\n人\n日\n月\n魚\n倉\n病\n";
  }
  const std::string ids = SUBCHAR_REAL_IDS_FILE;
  std::string err;
  size_t files_compared = 0;
  for (const std::string scheme : {"train", "train-idc", "infer-all", "infer-left",
                                   "infer-remove"}) {
    std::string first;
    std::string first_log;
    for (const std::string threads : {"1", "2", "8"}) {
      const std::string out = (dir / ("pre_" + scheme + threads)).string();
      const std::string log = out + ".log";
      std::vector<std::string> args = {"preprocess", "--scheme", scheme, "--ids", ids,
                                       "--input", src, "--output", out, "--log", log,
                                       "--threads", threads};
      if (scheme.starts_with("infer")) {
        args.insert(args.end(), {"--vocab", vocab});
      }
      if (RunQuiet(args, &err) != 0) {
        o.Fail("preprocess " + scheme + " failed: " + err);
        continue;
      }
      if (threads == "1") {
        first = Slurp(out);
        first_log = Slurp(log);
      } else {
        files_compared += 2;
        o.Expect(Slurp(out) == first && Slurp(log) == first_log,
                 "preprocess " + scheme + " differs with " + threads + " threads");
      }
    }
  }
  std::vector<std::string> first_split;
  for (const std::string threads : {"1", "2", "8"}) {
    const auto out = dir / ("split" + threads);
    if (RunQuiet({"build-unseen-set", "--src", src, "--tgt", tgt, "--ids", ids,
                  "--out-dir", out.string(), "--threads", threads},
                 &err) != 0) {
      o.Fail("build-unseen-set failed: " + err);
      continue;
    }
    std::vector<std::string> files;
    for (const char* name :
         {"train.src", "train.tgt", "unseen.src", "unseen.tgt", "triggers.tsv"}) {
      files.push_back(Slurp(out / name));
    }
    if (threads == "1") {
      first_split = files;
    } else {
      files_compared += files.size();
      o.Expect(files == first_split, "build-unseen-set differs with " + threads + " threads");
    }
  }
  std::filesystem::remove_all(dir);
  if (o.pass) {
    o.detail = std::to_string(files_compared) + " output files byte-identical across 1/2/8 threads";
  }
  return o;
}

Outcome Criterion8() {
  Outcome o;
  size_t sentences = 0;
  for (uint32_t seed = 100; seed < 120 && o.pass; ++seed) {
    const testing::Planted planted = testing::MakePlantedCorpus(seed, 1000);
    const SplitResult split = BuildUnseenSplit(planted.bitext, planted.db, FrequencyConfig());
    std::vector<std::string> train_src;
    for (const auto& p : split.train) train_src.push_back(p.source);
    std::vector<std::string> all_src;
    for (const auto& p : planted.bitext) all_src.push_back(p.source);
    // Small vocabulary too, so components of planted characters are unseen.
    const Vocabulary vocabs[] = {
        BuildCharVocab(train_src),
        BuildCharVocab(std::vector<std::string>{"木口水人日月魚病"})};
    const DecompositionDb* dbs[] = {&planted.db, &RealDb()};
    for (const DecompositionDb* db : dbs) {
      for (const Vocabulary& vocab : vocabs) {
        for (const SchemeConfig& config : AllInferenceConfigs()) {
          const CorpusResult once = PreprocessCorpus(*db, vocab, all_src, config);
          const CorpusResult twice = PreprocessCorpus(*db, vocab, once.lines, config);
          sentences += all_src.size();
          if (once.lines != twice.lines) {
            for (size_t i = 0; i < once.lines.size(); ++i) {
              if (once.lines[i] != twice.lines[i]) {
                o.Fail(ConfigLabel(config) + ": '" + once.lines[i] + "' -> '" +
                       twice.lines[i] + "'");
                break;
              }
            }
          }
        }
      }
    }
  }
  if (o.pass) o.detail = std::to_string(sentences) + " sentences idempotent";
  return o;
}

}  // namespace
}  // namespace subchar

int main() {
  using subchar::Outcome;
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"C1 scheme table reproduction", subchar::Criterion1},
      {"C2 recursive expansion examples", subchar::Criterion2},
      {"C3 no-op on in-vocabulary sentences", subchar::Criterion3},
      {"C4 IDS round-trip and real table ingest", subchar::Criterion4},
      {"C5 BPE oracle equivalence", subchar::Criterion5},
      {"C6 unseen split guarantees", subchar::Criterion6},
      {"C7 determinism across thread counts", subchar::Criterion7},
      {"C8 inference idempotence", subchar::Criterion8},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome.Fail(std::string("exception: ") + e.what());
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
