#include "crossdom/analysis.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "crossdom/errors.h"
#include "crossdom/parallel.h"
#include "crossdom/submetrics.h"

namespace crossdom {

double ReductionRate(double id_score, double ood_score) {
  if (!(id_score > 0.0)) {
    throw std::invalid_argument("reduction rate needs a positive in-domain score");
  }
  return (id_score - ood_score) / id_score;
}

double MeanReductionRate(double id_score, std::span<const double> ood_scores) {
  if (ood_scores.empty()) {
    throw std::invalid_argument("mean reduction rate over no domains");
  }
  double sum = 0.0;
  for (double ood : ood_scores) sum += ReductionRate(id_score, ood);
  return sum / static_cast<double>(ood_scores.size());
}

DegradationRecord MakeDegradationRecord(std::string parser, std::string domain,
                                        double id_score, double ood_score) {
  return {std::move(parser), std::move(domain), id_score, ood_score,
          ReductionRate(id_score, ood_score)};
}

std::vector<std::vector<std::size_t>> BootstrapSamples(
    std::size_t population, const BootstrapConfig& config) {
  if (config.resamples == 0) {
    throw std::invalid_argument("bootstrap needs at least one resample");
  }
  if (config.sample_size == 0) {
    throw std::invalid_argument("bootstrap sample size must be positive");
  }
  if (population == 0) {
    throw std::invalid_argument("bootstrap over an empty population");
  }
  if (!config.with_replacement && config.sample_size > population) {
    throw std::invalid_argument(
        "sample size " + std::to_string(config.sample_size) +
        " exceeds population " + std::to_string(population) +
        " when sampling without replacement");
  }
  std::vector<std::vector<std::size_t>> samples(config.resamples);
  std::vector<std::size_t> pool(population);
  for (std::size_t r = 0; r < config.resamples; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(r),
                      static_cast<std::uint32_t>(r >> 32)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t>& sample = samples[r];
    sample.reserve(config.sample_size);
    if (config.with_replacement) {
      std::uniform_int_distribution<std::size_t> pick(0, population - 1);
      for (std::size_t k = 0; k < config.sample_size; ++k) {
        sample.push_back(pick(rng));
      }
    } else {
      // Partial Fisher-Yates: the first sample_size slots are the draw.
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (std::size_t k = 0; k < config.sample_size; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, population - 1);
        std::swap(pool[k], pool[pick(rng)]);
        sample.push_back(pool[k]);
      }
    }
  }
  return samples;
}

double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("pearson: series lengths differ (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  auto constant = [](std::span<const double> s) {
    return std::all_of(s.begin(), s.end(), [&](double v) { return v == s[0]; });
  };
  if (x.size() < 2 || constant(x) || constant(y)) {
    throw ConstantSeriesError(
        "pearson correlation is undefined for a constant series");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw ConstantSeriesError(
        "pearson correlation is undefined for a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Scores files

std::vector<std::string> ScoresTable::Parsers() const {
  std::vector<std::string> out;
  for (const ScoreRow& row : rows_) {
    if (std::find(out.begin(), out.end(), row.parser) == out.end()) {
      out.push_back(row.parser);
    }
  }
  return out;
}

std::vector<std::string> ScoresTable::Domains() const {
  std::vector<std::string> out;
  for (const ScoreRow& row : rows_) {
    if (std::find(out.begin(), out.end(), row.domain) == out.end()) {
      out.push_back(row.domain);
    }
  }
  return out;
}

const ScoreRow* ScoresTable::Find(std::string_view parser,
                                  std::string_view domain) const {
  for (const ScoreRow& row : rows_) {
    if (row.parser == parser && row.domain == domain) return &row;
  }
  return nullptr;
}

std::optional<double> ScoresTable::Value(std::string_view parser,
                                         std::string_view domain,
                                         SubMetricKind metric) const {
  const ScoreRow* row = Find(parser, domain);
  if (row == nullptr) return std::nullopt;
  auto it = row->values.find(metric);
  if (it == row->values.end()) return std::nullopt;
  return it->second;
}

void ScoresTable::Add(ScoreRow row) {
  if (Find(row.parser, row.domain) != nullptr) {
    throw DataError("duplicate scores row for parser '" + row.parser +
                    "', domain '" + row.domain + "'");
  }
  for (const auto& [metric, value] : row.values) {
    if (std::find(metrics_.begin(), metrics_.end(), metric) == metrics_.end()) {
      metrics_.push_back(metric);
    }
  }
  std::sort(metrics_.begin(), metrics_.end());
  rows_.push_back(std::move(row));
}

void ScoresTable::Merge(const ScoresTable& other) {
  for (const ScoreRow& row : other.rows_) Add(row);
}

namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view TrimSpaces(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

ScoresTable ParseScoresTsv(std::string_view text, std::string_view origin) {
  ScoresTable table;
  std::vector<SubMetricKind> columns;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  const std::string where(origin);
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (TrimSpaces(line).empty()) continue;

    const auto fields = SplitTabs(line);
    const std::string at = where + ":" + std::to_string(line_no) + ": ";
    if (!have_header) {
      if (fields.size() < 3 || TrimSpaces(fields[0]) != "parser" ||
          TrimSpaces(fields[1]) != "domain" ||
          TrimSpaces(fields[2]) != "smatch") {
        throw DataError(at +
                        "scores header must start with parser<TAB>domain<TAB>smatch");
      }
      for (std::size_t i = 2; i < fields.size(); ++i) {
        auto kind = ParseSubMetricKind(TrimSpaces(fields[i]));
        if (!kind) {
          throw DataError(at + "unknown metric column '" +
                          std::string(fields[i]) + "'");
        }
        columns.push_back(*kind);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != columns.size() + 2) {
      throw DataError(at + "expected " + std::to_string(columns.size() + 2) +
                      " fields, got " + std::to_string(fields.size()));
    }
    ScoreRow row;
    row.parser = std::string(TrimSpaces(fields[0]));
    row.domain = std::string(TrimSpaces(fields[1]));
    if (row.parser.empty() || row.domain.empty()) {
      throw DataError(at + "empty parser or domain name");
    }
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const std::string_view field = TrimSpaces(fields[i + 2]);
      if (field.empty() || field == "-") continue;
      double value = 0.0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(value)) {
        throw DataError(at + "bad score '" + std::string(field) + "'");
      }
      row.values.emplace(columns[i], value);
    }
    if (row.values.count(SubMetricKind::kSmatch) == 0) {
      throw DataError(at + "missing smatch score");
    }
    table.Add(std::move(row));
  }
  if (!have_header) throw DataError(where + ": empty scores file");
  return table;
}

ScoresTable ReadScoresTsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open scores file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseScoresTsv(buffer.str(), path.string());
}

std::string WriteScoresTsv(const ScoresTable& table) {
  std::string out = "parser\tdomain";
  for (SubMetricKind metric : table.metrics()) {
    out += '\t';
    out += SubMetricName(metric);
  }
  out += '\n';
  for (const ScoreRow& row : table.rows()) {
    out += row.parser;
    out += '\t';
    out += row.domain;
    for (SubMetricKind metric : table.metrics()) {
      out += '\t';
      auto it = row.values.find(metric);
      if (it == row.values.end()) {
        out += '-';
      } else {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), it->second);
        out.append(buf, ptr);
      }
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Correlation

std::string_view DivergenceMeasureName(DivergenceMeasure measure) {
  return measure == DivergenceMeasure::kJs ? "js" : "oov";
}

std::vector<CorrelationRow> FeatureCorrelation(
    const Corpus& gold, const std::map<std::string, Corpus>& predictions,
    const std::map<std::string, double>& id_scores, const Corpus& source,
    const CorrelationOptions& options, std::vector<ResamplePoint>* points) {
  for (FeatureKind kind : options.kinds) {
    if (kind == FeatureKind::kLength) {
      throw std::invalid_argument(
          "length has no divergence measure to correlate");
    }
  }
  if (gold.empty()) throw DataError("correlation over an empty gold corpus");
  for (const auto& [parser, corpus] : predictions) {
    auto it = id_scores.find(parser);
    if (it == id_scores.end()) {
      throw DataError("no in-domain score for parser '" + parser + "'");
    }
    if (!(it->second > 0.0)) {
      throw DataError("in-domain score for parser '" + parser +
                      "' must be positive");
    }
  }

  const auto samples = BootstrapSamples(gold.size(), options.bootstrap);

  // Per-entry Smatch counts, scored once and reused by every resample.
  std::map<std::string, std::vector<MatchCounts>> entry_counts;
  for (const auto& [parser, corpus] : predictions) {
    entry_counts.emplace(parser, PairwiseSmatch(corpus, gold, options.scoring));
  }

  const std::size_t num_kinds = options.kinds.size();
  std::vector<FeatureDistribution> source_dists;
  for (FeatureKind kind : options.kinds) {
    source_dists.push_back(Extract(source, kind, options.features));
  }
  // entry_dists[k][i]: features of gold entry i for kind k.
  std::vector<std::vector<FeatureDistribution>> entry_dists(num_kinds);
  for (std::size_t k = 0; k < num_kinds; ++k) {
    entry_dists[k].reserve(gold.size());
    for (const CorpusEntry& entry : gold.entries) {
      entry_dists[k].push_back(
          ExtractEntry(entry, options.kinds[k], options.features));
    }
  }

  std::vector<ResamplePoint> series(samples.size());
  ParallelFor(samples.size(), options.scoring.threads, [&](std::size_t r) {
    ResamplePoint& point = series[r];
    point.js.resize(num_kinds);
    point.oov.resize(num_kinds);
    for (std::size_t k = 0; k < num_kinds; ++k) {
      FeatureDistribution subset(options.kinds[k]);
      for (std::size_t i : samples[r]) subset.Merge(entry_dists[k][i]);
      if (subset.empty() || source_dists[k].empty()) {
        throw DataError("feature '" +
                        std::string(FeatureKindName(options.kinds[k])) +
                        "' is empty in a resample or in the source corpus");
      }
      point.js[k] = Js(source_dists[k], subset, options.divergence.log_base);
      point.oov[k] =
          OovRate(source_dists[k], subset, options.divergence.oov_weighting);
    }
    for (const auto& [parser, counts] : entry_counts) {
      MatchCounts total;
      for (std::size_t i : samples[r]) total += counts[i];
      const double score = 100.0 * ScoreReport::FromCounts(total).f1;
      point.reduction[parser] = ReductionRate(id_scores.at(parser), score);
    }
  });

  std::vector<CorrelationRow> rows;
  for (const auto& [parser, counts] : entry_counts) {
    std::vector<double> reduction;
    reduction.reserve(series.size());
    for (const ResamplePoint& point : series) {
      reduction.push_back(point.reduction.at(parser));
    }
    for (std::size_t k = 0; k < num_kinds; ++k) {
      for (DivergenceMeasure measure :
           {DivergenceMeasure::kJs, DivergenceMeasure::kOov}) {
        std::vector<double> divergence;
        divergence.reserve(series.size());
        for (const ResamplePoint& point : series) {
          divergence.push_back(measure == DivergenceMeasure::kJs ? point.js[k]
                                                                 : point.oov[k]);
        }
        CorrelationRow row{parser, options.kinds[k], measure, std::nullopt};
        try {
          row.r = Pearson(divergence, reduction);
        } catch (const ConstantSeriesError&) {
          if (!options.skip_constant) {
            throw ConstantSeriesError(
                "constant series for parser '" + parser + "', feature '" +
                std::string(FeatureKindName(options.kinds[k])) +
                "', measure '" + std::string(DivergenceMeasureName(measure)) +
                "' over " + std::to_string(series.size()) + " resample(s)");
          }
        }
        rows.push_back(std::move(row));
      }
    }
  }
  if (points != nullptr) *points = std::move(series);
  return rows;
}

}  // namespace crossdom
