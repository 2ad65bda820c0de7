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

#include "subchar/bpe.h"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "bpe_oracle.h"
#include "subchar/errors.h"

namespace subchar {
namespace {

using testing::BruteForceBpe;
using testing::RandomBpeCorpus;

std::vector<BpePair> Merges(std::initializer_list<std::pair<const char*, const char*>> list) {
  std::vector<BpePair> out;
  for (const auto& [l, r] : list) out.push_back({l, r});
  return out;
}

TEST(LearnBpeTest, SinglePair) {
  const std::vector<std::string> corpus = {"ab ab ab"};
  EXPECT_EQ(LearnBpe(corpus, 1).merges(), Merges({{"a", "b"}}));
}

TEST(LearnBpeTest, ZeroMerges) {
  const std::vector<std::string> corpus = {"木交 木交"};
  const BpeModel model = LearnBpe(corpus, 0);
  EXPECT_TRUE(model.merges().empty());
  EXPECT_EQ(model.SegmentWord("木交"), (std::vector<std::string>{"木", "交"}));
}

TEST(LearnBpeTest, StopsWhenNoPairRepeats) {
  const std::vector<std::string> corpus = {"abc"};
  EXPECT_TRUE(LearnBpe(corpus, 5).merges().empty());
  const std::vector<std::string> twice = {"abc abc"};
  EXPECT_EQ(LearnBpe(twice, 5).merges(), Merges({{"a", "b"}, {"ab", "c"}}));
}

TEST(LearnBpeTest, TiesGoToSmallestPair) {
  // (b,a) and (a,b) both occur twice; (a,b) sorts first.
  const std::vector<std::string> corpus = {"ba ba ab ab"};
  EXPECT_EQ(LearnBpe(corpus, 1).merges(), Merges({{"a", "b"}}));
}

TEST(LearnBpeTest, RepeatedSymbolsMergeWithoutOverlap) {
  const std::vector<std::string> corpus = {"aaa aaa"};
  // aaa has pair (a,a) twice per word but only one non-overlapping merge.
  EXPECT_EQ(LearnBpe(corpus, 2).merges(), Merges({{"a", "a"}, {"aa", "a"}}));
}

TEST(LearnBpeTest, TwentyWordsMatchOracle) {
  const std::vector<std::string> corpus = {
      "low lower lowest newer wider", "new newest low low wide",
      "木交 木交木 校木 魚弱 魚弱", "弱魚 wider newer lower low"};
  const auto expected = BruteForceBpe(corpus, 10);
  ASSERT_EQ(expected.merges.size(), 10u);
  EXPECT_EQ(LearnBpe(corpus, 10).merges(), expected.merges);
}

TEST(LearnBpeTest, MatchesOracleOnRandomCorpora) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto corpus = RandomBpeCorpus(rng, 100);
    const int merges = std::uniform_int_distribution<int>(0, 60)(rng);
    const auto oracle = BruteForceBpe(corpus, merges);
    const BpeModel model = LearnBpe(corpus, merges);
    ASSERT_EQ(model.merges(), oracle.merges) << "trial " << trial;
    // Replaying the merges reproduces the learn-time segmentation.
    for (const auto& [word, segments] : oracle.segmentation) {
      ASSERT_EQ(model.SegmentWord(word), segments) << word;
    }
  }
}

TEST(LearnBpeTest, Deterministic) {
  std::mt19937 rng(5);
  const auto corpus = RandomBpeCorpus(rng, 100);
  auto shuffled = corpus;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  EXPECT_EQ(LearnBpe(corpus, 30).merges(), LearnBpe(corpus, 30).merges());
  EXPECT_EQ(LearnBpe(corpus, 30).merges(), LearnBpe(shuffled, 30).merges());
}

TEST(ApplyBpeTest, Examples) {
  const BpeModel model(Merges({{"a", "b"}}), 1, "@@");
  EXPECT_EQ(ApplyBpe(model, "ab cd"), "ab c@@ d");
  const BpeModel empty;
  EXPECT_EQ(ApplyBpe(empty, "木交"), "木@@ 交");
  EXPECT_EQ(ApplyBpe(empty, ""), "");
  EXPECT_EQ(ApplyBpe(model, "  ab\tab  "), "  ab\tab  ");
}

TEST(ApplyBpeTest, ReplaysInOrder) {
  // Rank order decides: (b,c) fires before (a,b), leaving a + bc.
  const BpeModel model(Merges({{"b", "c"}, {"a", "b"}}), 2);
  EXPECT_EQ(model.SegmentWord("abc"), (std::vector<std::string>{"a", "bc"}));
}

TEST(ApplyBpeTest, StripRoundTrip) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto corpus = RandomBpeCorpus(rng, 100);
    const BpeModel model = LearnBpe(corpus, 40);
    for (const auto& sentence : corpus) {
      const std::string applied = ApplyBpe(model, sentence);
      ASSERT_EQ(StripBpe(applied, "@@"), sentence);
      // Segmentation never crosses word boundaries.
      ASSERT_EQ(SplitWhitespace(StripBpe(applied, "@@")).size(),
                SplitWhitespace(sentence).size());
    }
  }
}

TEST(BpeModelTest, ConstructorChecks) {
  EXPECT_THROW(BpeModel(Merges({{"a", "b"}}), 0), std::invalid_argument);
  EXPECT_THROW(BpeModel({}, 1, ""), std::invalid_argument);
  EXPECT_THROW(BpeModel({}, 1, "@ @"), std::invalid_argument);
  EXPECT_THROW(BpeModel(Merges({{"a b", "c"}}), 1), std::invalid_argument);
}

TEST(BpeModelTest, FileRoundTrip) {
  const std::vector<std::string> corpus = {"low lower lowest low", "木交 木交"};
  const BpeModel model = LearnBpe(corpus, 50, "##");
  std::stringstream buffer;
  model.Write(buffer);
  EXPECT_TRUE(buffer.str().starts_with("#bpe marker=## num_merges=50\n"));
  const BpeModel loaded = BpeModel::Read(buffer);
  EXPECT_EQ(loaded.merges(), model.merges());
  EXPECT_EQ(loaded.num_merges(), 50);
  EXPECT_EQ(loaded.continuation_marker(), "##");
}

TEST(BpeModelTest, ReadErrors) {
  for (const char* text : {"", "#bpe\n", "#bpe marker=@@ num_merges=x\n",
                           "#bpe marker=@@ num_merges=1\na b c\n",
                           "#bpe marker=@@ num_merges=1\na b\nc d\n",
                           "#bpe marker=@@ num_merges=1\nab\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(BpeModel::Read(in), FormatError) << text;
  }
  EXPECT_THROW(BpeModel::Load("/nonexistent"), IoError);
}

}  // namespace
}  // namespace subchar
