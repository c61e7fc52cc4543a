#ifndef CROSSDOM_ANALYSIS_H_
#define CROSSDOM_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crossdom/divergence.h"
#include "crossdom/features.h"
#include "crossdom/penman.h"
#include "crossdom/smatch.h"
#include "crossdom/triples.h"

namespace crossdom {

// (id - ood) / id. Throws std::invalid_argument when id_score <= 0.
double ReductionRate(double id_score, double ood_score);

// Mean of the per-domain reduction rates; this is how the "Avg" column of a
// degradation table is aggregated.
double MeanReductionRate(double id_score, std::span<const double> ood_scores);

struct DegradationRecord {
  std::string parser;
  std::string domain;
  double id_score = 0.0;
  double ood_score = 0.0;
  double reduction = 0.0;
};

DegradationRecord MakeDegradationRecord(std::string parser, std::string domain,
                                        double id_score, double ood_score);

struct BootstrapConfig {
  std::size_t resamples = 100;
  std::size_t sample_size = 2000;
  std::uint64_t seed = 0;
  bool with_replacement = false;
};

// `resamples` index lists of length `sample_size` over [0, population).
// Resample r draws from its own generator seeded by (seed, r). Throws
// std::invalid_argument for zero sizes or, without replacement, for
// sample_size > population.
std::vector<std::vector<std::size_t>> BootstrapSamples(
    std::size_t population, const BootstrapConfig& config);

// Sample Pearson correlation. Throws std::invalid_argument on a length
// mismatch and ConstantSeriesError when either series has no variation
// (including series shorter than two points).
double Pearson(std::span<const double> x, std::span<const double> y);

// ---------------------------------------------------------------------------
// Scores files: TSV with header "parser<TAB>domain<TAB>smatch", optionally
// followed by further sub-metric columns (unlabeled, nowsd, ...). Scores are
// on the 0-100 scale of published tables. "-" marks a missing value.

struct ScoreRow {
  std::string parser;
  std::string domain;
  std::map<SubMetricKind, double> values;
};

class ScoresTable {
 public:
  const std::vector<SubMetricKind>& metrics() const { return metrics_; }
  const std::vector<ScoreRow>& rows() const { return rows_; }

  // Parser and domain names in order of first appearance.
  std::vector<std::string> Parsers() const;
  std::vector<std::string> Domains() const;

  const ScoreRow* Find(std::string_view parser, std::string_view domain) const;
  std::optional<double> Value(std::string_view parser, std::string_view domain,
                              SubMetricKind metric) const;

  // Throws DataError on a duplicate (parser, domain) row.
  void Add(ScoreRow row);
  void Merge(const ScoresTable& other);

 private:
  std::vector<SubMetricKind> metrics_;
  std::vector<ScoreRow> rows_;
};

// Throws DataError on a malformed header or row.
ScoresTable ParseScoresTsv(std::string_view text,
                           std::string_view origin = "<scores>");
ScoresTable ReadScoresTsv(const std::filesystem::path& path);
std::string WriteScoresTsv(const ScoresTable& table);

// ---------------------------------------------------------------------------
// Feature / degradation correlation over bootstrap resamples.

enum class DivergenceMeasure { kJs, kOov };

std::string_view DivergenceMeasureName(DivergenceMeasure measure);

struct CorrelationOptions {
  BootstrapConfig bootstrap;
  // Distribution features only; kLength is rejected.
  std::vector<FeatureKind> kinds = {
      FeatureKind::kUnigram, FeatureKind::kBigram,   FeatureKind::kTrigram,
      FeatureKind::kConcept, FeatureKind::kRelation, FeatureKind::kTriplet};
  CorpusScoreOptions scoring;
  FeatureOptions features;
  DivergenceOptions divergence;
  // Report r as missing instead of throwing when a series is constant.
  bool skip_constant = false;
};

struct CorrelationRow {
  std::string parser;
  FeatureKind kind;
  DivergenceMeasure measure;
  std::optional<double> r;
};

struct ResamplePoint {
  // Indexed like CorrelationOptions::kinds.
  std::vector<double> js;
  std::vector<double> oov;
  // Keyed by parser.
  std::map<std::string, double> reduction;
};

// For every resample of `gold`, measures each feature's divergence from
// `source` and each parser's Smatch reduction relative to its in-domain
// score (0-100 scale), then correlates the series per (parser, kind,
// measure). Entry i of every prediction corpus is scored once with seed
// `scoring.seed + i`; a resample aggregates those counts.
std::vector<CorrelationRow> FeatureCorrelation(
    const Corpus& gold, const std::map<std::string, Corpus>& predictions,
    const std::map<std::string, double>& id_scores, const Corpus& source,
    const CorrelationOptions& options = {},
    std::vector<ResamplePoint>* points = nullptr);

}  // namespace crossdom

#endif  // CROSSDOM_ANALYSIS_H_
