#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

#include "crossdom/submetrics.h"
#include "support/fixtures.h"

namespace crossdom::cli {
namespace {

namespace fs = std::filesystem;

const std::string kData = CROSSDOM_TEST_DATA_DIR;
const std::string kNewsGold = kData + "/news_gold.amr";
const std::string kNewsPred = kData + "/news_pred.amr";
const std::string kBioGold = kData + "/bio_gold.amr";
const std::string kScores = kData + "/parser_scores.tsv";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "amr-crossdom");
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> Tsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, '\t')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("crossdom_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                                  ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string Write(const std::string& name, const std::string& text) const {
    const fs::path file = path_ / name;
    std::ofstream(file) << text;
    return file.string();
  }
  std::string Path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

TEST(CliTest, HelpExitsZero) {
  const Result r = RunCli({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("score"), std::string::npos);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"score", "--gold", kNewsGold}).code, kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"score", "--gold", kNewsGold, "--pred", kNewsPred,
                    "--format", "xml"})
                .code,
            kExitUsage);
  const Result r = RunCli({"diverge", "--source", kNewsGold, "--target",
                           kBioGold, "--features", "unigram,fourgram"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("fourgram"), std::string::npos);
}

TEST(CliTest, MissingFileIsDataError) {
  const Result r =
      RunCli({"score", "--gold", kData + "/nope.amr", "--pred", kNewsPred});
  EXPECT_EQ(r.code, kExitDataError);
  EXPECT_NE(r.err.find("nope.amr"), std::string::npos);
}

TEST(CliScoreTest, SelfScoreIsPerfect) {
  const Result r =
      RunCli({"score", "--gold", kNewsGold, "--pred", kNewsGold, "--fine-grained"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = Tsv(r.out);
  ASSERT_EQ(rows.size(), 1 + kAllSubMetrics.size());
  EXPECT_EQ(rows[0], (std::vector<std::string>{"metric", "precision", "recall",
                                               "f1"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], SubMetricName(kAllSubMetrics[i - 1]));
    for (std::size_t c = 1; c < 4; ++c) EXPECT_EQ(rows[i][c], "100.0");
  }
}

TEST(CliScoreTest, PredictionScores) {
  const Result r = RunCli({"score", "--gold", kNewsGold, "--pred", kNewsPred,
                           "--raw", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], kJsonSchemaVersion);
  EXPECT_EQ(doc["command"], "score");
  // 20 gold and 17 predicted triples, 15 matched.
  const auto& smatch = doc["scores"]["smatch"];
  EXPECT_EQ(smatch["matched"], 15);
  EXPECT_EQ(smatch["pred_total"], 17);
  EXPECT_EQ(smatch["gold_total"], 20);
  EXPECT_DOUBLE_EQ(smatch["f1"].get<double>(), 30.0 / 37.0);
}

TEST(CliScoreTest, MarkdownColumnsInOrder) {
  const Result r = RunCli({"score", "--gold", kNewsGold, "--pred", kNewsPred,
                           "--fine-grained", "--format", "markdown",
                           "--parser", "Mine"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::string expected = "| Model |";
  for (SubMetricKind kind : kAllSubMetrics) {
    expected += " " + std::string(SubMetricHeading(kind)) + " |";
  }
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), expected);
  EXPECT_NE(r.out.find("| Mine |"), std::string::npos);
}

TEST(CliScoreTest, ScoresFormatFeedsReport) {
  TempDir dir;
  const Result id = RunCli({"score", "--gold", kNewsGold, "--pred", kNewsGold,
                            "--format", "scores", "--parser", "p", "--domain",
                            "news"});
  const Result ood = RunCli({"score", "--gold", kNewsGold, "--pred", kNewsPred,
                             "--format", "scores", "--parser", "p", "--domain",
                             "web"});
  ASSERT_EQ(id.code, kExitOk);
  ASSERT_EQ(ood.code, kExitOk);
  EXPECT_EQ(id.out, "parser\tdomain\tsmatch\np\tnews\t100\n");
  const Result report =
      RunCli({"report", "--id-scores", dir.Write("id.tsv", id.out), "--scores",
              dir.Write("ood.tsv", ood.out)});
  ASSERT_EQ(report.code, kExitOk) << report.err;
  EXPECT_NE(report.out.find("| p | 100.0 | 81.1 (18.9%) |"), std::string::npos)
      << report.out;
}

TEST(CliScoreTest, LenientSkipsMalformedGraphs) {
  TempDir dir;
  const std::string bad = dir.Write(
      "bad.amr", "# ::id a\n(b / boy)\n\n# ::id b\n(x / y :ARG0\n\n# ::id c\n(g / girl)\n");
  const std::string good =
      dir.Write("good.amr", "# ::id a\n(b / boy)\n\n# ::id c\n(g / girl)\n");
  const Result strict = RunCli({"score", "--gold", good, "--pred", bad});
  EXPECT_EQ(strict.code, kExitDataError);
  const Result lenient =
      RunCli({"score", "--gold", good, "--pred", bad, "--lenient"});
  ASSERT_EQ(lenient.code, kExitOk) << lenient.err;
  EXPECT_NE(lenient.err.find("warning"), std::string::npos);
  EXPECT_NE(lenient.out.find("smatch\t100.0\t100.0\t100.0"), std::string::npos);
}

TEST(CliScoreTest, MismatchedLengthsAreDataErrors) {
  const Result r = RunCli({"score", "--gold", kNewsGold, "--pred", kBioGold});
  EXPECT_EQ(r.code, kExitDataError);
}

TEST(CliDivergeTest, SelfComparisonIsZero) {
  const Result r = RunCli({"diverge", "--source", kNewsGold, "--target", kNewsGold});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = Tsv(r.out);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"feature", "js", "oov"}));
  EXPECT_EQ(rows[1][0], "length");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][1], "0.00") << rows[i][0];
    EXPECT_EQ(rows[i][2], "0.00") << rows[i][0];
  }
}

TEST(CliDivergeTest, DisjointCorpora) {
  const Result r = RunCli({"diverge", "--source", kNewsGold, "--target", kBioGold,
                           "--features", "unigram,concept", "--precision", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "feature\tjs\toov\nunigram\t0.693\t1.000\nconcept\t0.693\t1.000\n");
  const Result bits =
      RunCli({"diverge", "--source", kNewsGold, "--target", kBioGold,
              "--features", "concept", "--log-base", "2"});
  EXPECT_EQ(bits.out, "feature\tjs\toov\nconcept\t1.00\t1.00\n");
}

TEST(CliDivergeTest, MarkdownCells) {
  const Result r = RunCli({"diverge", "--source", kNewsGold, "--target", kBioGold,
                           "--features", "length,concept", "--format",
                           "markdown", "--name", "Bio"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("| Test set | Avg. Len |"), std::string::npos);
  EXPECT_NE(r.out.find("| Bio | 3.00 | 0.69 (1.00) |"), std::string::npos)
      << r.out;
}

TEST(CliDivergeTest, JsonOutput) {
  const Result r = RunCli({"diverge", "--source", kNewsGold, "--target", kBioGold,
                           "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], kJsonSchemaVersion);
  EXPECT_EQ(doc["features"].size(), 7u);
  EXPECT_DOUBLE_EQ(doc["features"][0]["avg_length"].get<double>(), 3.0);
}

class CliCorrelateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const testing::CorrelationFixture fixture = testing::MakeCorrelationFixture(1);
    gold_ = dir_.Path("gold.amr");
    source_ = dir_.Path("source.amr");
    correlated_ = dir_.Path("correlated.amr");
    independent_ = dir_.Path("independent.amr");
    testing::WriteCorpus(fixture.gold, gold_);
    testing::WriteCorpus(fixture.source, source_);
    testing::WriteCorpus(fixture.correlated, correlated_);
    testing::WriteCorpus(fixture.independent, independent_);
    id_scores_ = dir_.Write("id.tsv",
                            "parser\tdomain\tsmatch\n"
                            "correlated\tsource\t90\n"
                            "independent\tsource\t90\n");
  }

  std::vector<std::string> Args() const {
    return {"correlate",     "--gold",          gold_,
            "--source",      source_,           "--pred",
            "correlated=" + correlated_,        "--pred",
            "independent=" + independent_,      "--id-scores",
            id_scores_,      "--sample-size",   "60",
            "--features",    "unigram,concept", "--restarts",
            "2"};
  }

  TempDir dir_;
  std::string gold_, source_, correlated_, independent_, id_scores_;
};

TEST_F(CliCorrelateTest, RecoversCorrelation) {
  const Result r = RunCli(Args());
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = Tsv(r.out);
  ASSERT_EQ(rows.size(), 1u + 2 * 2 * 2);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"parser", "feature", "measure",
                                               "r"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][1] != "concept") continue;
    const double value = std::stod(rows[i][3]);
    if (rows[i][0] == "correlated") {
      EXPECT_GT(value, 0.9);
    } else {
      EXPECT_LT(std::abs(value), 0.3);
    }
  }
}

TEST_F(CliCorrelateTest, RepeatedRunsAreByteIdentical) {
  std::vector<std::string> md = Args();
  md.insert(md.end(), {"--format", "markdown", "--threads", "1"});
  const Result a = RunCli(md);
  md.back() = "4";
  const Result b = RunCli(md);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("OOV rate"), std::string::npos);
  EXPECT_NE(a.out.find("| Model | Unigram | Concept |"), std::string::npos);
}

TEST_F(CliCorrelateTest, Errors) {
  std::vector<std::string> one = Args();
  one.insert(one.end(), {"--bootstrap", "1"});
  EXPECT_EQ(RunCli(one).code, kExitAnalysisError);

  std::vector<std::string> big = Args();
  big.insert(big.end(), {"--sample-size", "5000"});
  const Result too_big = RunCli(big);
  EXPECT_EQ(too_big.code, kExitDataError);
  EXPECT_NE(too_big.err.find("--with-replacement"), std::string::npos);
  big.push_back("--with-replacement");
  big.insert(big.end(), {"--bootstrap", "3"});
  EXPECT_EQ(RunCli(big).code, kExitOk);

  std::vector<std::string> length = Args();
  length.insert(length.end(), {"--features", "length"});
  EXPECT_EQ(RunCli(length).code, kExitUsage);

  std::vector<std::string> bad_pred = Args();
  bad_pred.insert(bad_pred.end(), {"--pred", "noequals"});
  EXPECT_EQ(RunCli(bad_pred).code, kExitUsage);

  std::vector<std::string> unscored = Args();
  unscored.insert(unscored.end(), {"--pred", "other=" + correlated_});
  const Result missing = RunCli(unscored);
  EXPECT_EQ(missing.code, kExitDataError);
  EXPECT_NE(missing.err.find("other"), std::string::npos);
}

TEST_F(CliCorrelateTest, ConstantSeries) {
  std::vector<std::string> args = Args();
  args.insert(args.end(), {"--features", "relation", "--bootstrap", "5"});
  const Result r = RunCli(args);
  EXPECT_EQ(r.code, kExitAnalysisError);
  EXPECT_NE(r.err.find("relation"), std::string::npos);
  args.push_back("--skip-constant");
  const Result skipped = RunCli(args);
  ASSERT_EQ(skipped.code, kExitOk) << skipped.err;
  EXPECT_NE(skipped.out.find("correlated\trelation\tjs\t-"), std::string::npos);
}

TEST(CliReportTest, DegradationMatrix) {
  const Result r = RunCli({"report", "--scores", kScores});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("| Model | AMR2.0 | New3 | TLP | Bio | QALD-9 | Avg |"),
            std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("57.2 (14.6%)"), std::string::npos);
  EXPECT_NE(r.out.find("63.2 (26.1%)"), std::string::npos);
  EXPECT_NE(r.out.find("| JAMR | 67.0 |"), std::string::npos);
  EXPECT_NE(r.out.find("Mean relative reduction"), std::string::npos);
}

TEST(CliReportTest, SingleDomain) {
  TempDir dir;
  const std::string scores =
      dir.Write("id.tsv", "parser\tdomain\tsmatch\na\tnews\t80\nb\tnews\t70.24\n");
  const Result r = RunCli({"report", "--scores", scores});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "| Model | news |\n| --- | :---: |\n| a | 80.0 |\n| b | 70.2 |\n");
}

TEST(CliReportTest, IdDomainSelection) {
  const Result r =
      RunCli({"report", "--scores", kScores, "--id-domain", "TLP", "--format",
              "tsv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("JAMR\tTLP\tsmatch\t59.9\t-\n"), std::string::npos);
  EXPECT_EQ(RunCli({"report", "--scores", kScores, "--id-domain", "Web"}).code,
            kExitDataError);
}

TEST(CliReportTest, MissingIdScoreIsDataError) {
  TempDir dir;
  const std::string scores = dir.Write(
      "s.tsv", "parser\tdomain\tsmatch\na\tnews\t80\nb\tbio\t60\n");
  const Result r = RunCli({"report", "--scores", scores});
  EXPECT_EQ(r.code, kExitDataError);
  EXPECT_NE(r.err.find("'b'"), std::string::npos);
  EXPECT_EQ(RunCli({"report"}).code, kExitUsage);
}

TEST(CliReportTest, Json) {
  const Result r = RunCli({"report", "--scores", kScores, "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["schema_version"], kJsonSchemaVersion);
  EXPECT_EQ(doc["id_domain"], "AMR2.0");
  EXPECT_EQ(doc["ood_domains"].size(), 4u);
  EXPECT_EQ(doc["rows"].size(), 25u);
  EXPECT_EQ(doc["averages"].size(), 5u);
}

}  // namespace
}  // namespace crossdom::cli
