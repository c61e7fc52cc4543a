#include "crossdom/divergence.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

namespace crossdom {
namespace {

constexpr double kLn2 = std::numbers::ln2;

FeatureDistribution Dist(std::initializer_list<std::pair<const char*, int>> counts,
                         FeatureKind kind = FeatureKind::kUnigram) {
  FeatureDistribution d(kind);
  for (const auto& [value, count] : counts) d.Add(value, count);
  return d;
}

TEST(KlTest, Examples) {
  const FeatureDistribution p = Dist({{"a", 1}, {"b", 1}});
  EXPECT_DOUBLE_EQ(Kl(p, p), 0.0);
  EXPECT_NEAR(Kl(Dist({{"a", 1}}), p), kLn2, 1e-15);
  // Frozen from an independent script.
  EXPECT_NEAR(Kl(p, Dist({{"a", 3}, {"b", 5}})), 0.03226926056878557, 1e-15);
  EXPECT_NEAR(Kl(Dist({{"a", 1}}), p, LogBase::kTwo), 1.0, 1e-15);
}

TEST(KlTest, Errors) {
  EXPECT_THROW(Kl(Dist({{"a", 1}, {"c", 1}}), Dist({{"a", 1}})),
               std::invalid_argument);
  EXPECT_THROW(Kl(Dist({{"a", 1}}), Dist({{"a", 1}}, FeatureKind::kConcept)),
               std::invalid_argument);
  EXPECT_THROW(Kl(Dist({}), Dist({{"a", 1}})), std::invalid_argument);
}

TEST(JsTest, Examples) {
  const FeatureDistribution p = Dist({{"a", 1}, {"b", 1}});
  EXPECT_DOUBLE_EQ(Js(p, p), 0.0);
  EXPECT_NEAR(Js(Dist({{"a", 1}}), Dist({{"b", 1}})), kLn2, 1e-15);
  EXPECT_NEAR(Js(Dist({{"a", 1}}), Dist({{"b", 1}}), LogBase::kTwo), 1.0,
              1e-15);
  EXPECT_NEAR(Js(p, Dist({{"a", 1}, {"b", 3}})), 0.033822075568605205, 1e-15);
}

TEST(JsTest, Errors) {
  EXPECT_THROW(Js(Dist({}), Dist({{"a", 1}})), std::invalid_argument);
  EXPECT_THROW(Js(Dist({{"a", 1}}), Dist({})), std::invalid_argument);
  EXPECT_THROW(Js(Dist({{"a", 1}}), Dist({{"a", 1}}, FeatureKind::kBigram)),
               std::invalid_argument);
}

TEST(OovRateTest, Examples) {
  const FeatureDistribution s = Dist({{"a", 10}});
  EXPECT_DOUBLE_EQ(OovRate(s, Dist({{"a", 3}, {"b", 1}})), 0.25);
  EXPECT_DOUBLE_EQ(OovRate(s, Dist({{"a", 3}, {"b", 1}}), OovWeighting::kType),
                   0.5);
  EXPECT_DOUBLE_EQ(OovRate(s, s), 0.0);
  EXPECT_DOUBLE_EQ(OovRate(s, Dist({{"x", 2}, {"y", 7}})), 1.0);
  EXPECT_DOUBLE_EQ(OovRate(Dist({}), Dist({{"x", 2}})), 1.0);
  EXPECT_THROW(OovRate(s, Dist({})), std::invalid_argument);
}

class DivergencePropertyTest : public ::testing::Test {
 protected:
  FeatureDistribution Random(std::size_t vocabulary) {
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_int_distribution<std::size_t> value(0, vocabulary - 1);
    std::uniform_int_distribution<std::size_t> count(1, 9);
    FeatureDistribution d(FeatureKind::kConcept);
    for (std::size_t k = size(rng_); k > 0; --k) {
      d.Add("v" + std::to_string(value(rng_)), count(rng_));
    }
    return d;
  }

  std::mt19937_64 rng_{8};
};

TEST_F(DivergencePropertyTest, SymmetricBoundedAndScaleFree) {
  for (int i = 0; i < 300; ++i) {
    const FeatureDistribution p = Random(15);
    const FeatureDistribution q = Random(15);
    const double js = Js(p, q);
    EXPECT_NEAR(js, Js(q, p), 1e-12);
    EXPECT_GE(js, 0.0);
    EXPECT_LE(js, kLn2 + 1e-12);
    FeatureDistribution p3(p.kind());
    FeatureDistribution q3(q.kind());
    for (const auto& [v, c] : p.counts()) p3.Add(v, 3 * c);
    for (const auto& [v, c] : q.counts()) q3.Add(v, 3 * c);
    EXPECT_NEAR(Js(p3, q3), js, 1e-12);
    EXPECT_DOUBLE_EQ(OovRate(p3, q3), OovRate(p, q));
    EXPECT_NEAR(Js(p, p3), 0.0, 1e-12);
    const double oov = OovRate(p, q);
    EXPECT_GE(oov, 0.0);
    EXPECT_LE(oov, 1.0);
  }
}

TEST_F(DivergencePropertyTest, ZeroOnlyForEqualDistributions) {
  for (int i = 0; i < 300; ++i) {
    const FeatureDistribution p = Random(4);
    const FeatureDistribution q = Random(4);
    bool same = p.counts().size() == q.counts().size();
    for (const auto& [v, c] : p.counts()) {
      same = same && std::abs(p.Probability(v) - q.Probability(v)) < 1e-15;
    }
    if (same) {
      EXPECT_NEAR(Js(p, q), 0.0, 1e-12);
    } else {
      EXPECT_GT(Js(p, q), 0.0);
    }
  }
}

Corpus MakeCorpus(std::vector<std::pair<std::string, std::string>> items) {
  Corpus corpus;
  for (auto& [snt, graph] : items) {
    CorpusEntry entry;
    entry.snt = snt;
    entry.graph = ParseGraph(graph);
    corpus.entries.push_back(std::move(entry));
  }
  return corpus;
}

TEST(DivergenceTableTest, SelfComparisonIsZero) {
  const Corpus c = MakeCorpus(
      {{"The boy wants to go .", "(w / want-01 :ARG0 (b / boy))"},
       {"Dogs bark", "(b / bark-01 :ARG0 (d / dog))"}});
  const auto rows = DivergenceTable(c, c, kAllFeatureKinds);
  ASSERT_EQ(rows.size(), kAllFeatureKinds.size());
  EXPECT_DOUBLE_EQ(*rows[0].avg_length, 4.0);
  EXPECT_FALSE(rows[0].js.has_value());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].kind, kAllFeatureKinds[i]);
    EXPECT_DOUBLE_EQ(*rows[i].js, 0.0);
    EXPECT_DOUBLE_EQ(*rows[i].oov, 0.0);
  }
}

TEST(DivergenceTableTest, MatchesDirectCalls) {
  const Corpus source = MakeCorpus(
      {{"the boy runs", "(r / run-02 :ARG0 (b / boy))"},
       {"a girl sees the boy", "(s / see-01 :ARG0 (g / girl) :ARG1 (b / boy))"}});
  const Corpus target = MakeCorpus(
      {{"the cell divides", "(d / divide-02 :ARG1 (c / cell))"}});
  const auto rows = DivergenceTable(source, target, kAllFeatureKinds);
  for (const DivergenceRow& row : rows) {
    if (row.kind == FeatureKind::kLength) {
      EXPECT_DOUBLE_EQ(*row.avg_length, 3.0);
      continue;
    }
    const FeatureDistribution p = Extract(source, row.kind);
    const FeatureDistribution q = Extract(target, row.kind);
    EXPECT_EQ(*row.js, Js(p, q));
    EXPECT_EQ(*row.oov, OovRate(p, q));
  }
}

TEST(DivergenceTableTest, EmptyFeatureIsMissing) {
  const Corpus with_edges = MakeCorpus({{"x y", "(r / run-02 :ARG0 (b / boy))"}});
  const Corpus single = MakeCorpus({{"x y", "(b / boy)"}});
  const FeatureKind kinds[] = {FeatureKind::kRelation};
  const auto rows = DivergenceTable(with_edges, single, kinds);
  EXPECT_FALSE(rows[0].js.has_value());
  EXPECT_FALSE(rows[0].oov.has_value());
  const auto reverse = DivergenceTable(single, with_edges, kinds);
  EXPECT_FALSE(reverse[0].js.has_value());
  EXPECT_DOUBLE_EQ(*reverse[0].oov, 1.0);
}

}  // namespace
}  // namespace crossdom
