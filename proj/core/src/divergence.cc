#include "crossdom/divergence.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crossdom {

namespace {

void CheckSameKind(const FeatureDistribution& a, const FeatureDistribution& b) {
  if (a.kind() != b.kind()) {
    throw std::invalid_argument(
        "distributions of different kinds: " +
        std::string(FeatureKindName(a.kind())) + " vs " +
        std::string(FeatureKindName(b.kind())));
  }
}

// p * ln(p / m) with the 0 * ln 0 = 0 convention.
double XLogRatio(double p, double m) {
  return p > 0.0 ? p * std::log(p / m) : 0.0;
}

double InBase(double nats, LogBase base) {
  return base == LogBase::kTwo ? nats / std::numbers::ln2 : nats;
}

}  // namespace

double Kl(const FeatureDistribution& p, const FeatureDistribution& m,
          LogBase base) {
  CheckSameKind(p, m);
  if (p.empty()) throw std::invalid_argument("KL of an empty distribution");
  double sum = 0.0;
  for (const auto& [value, count] : p.counts()) {
    const double mv = m.Probability(value);
    if (mv == 0.0) {
      throw std::invalid_argument("KL support violation: '" + value +
                                  "' has zero mass in the reference");
    }
    sum += XLogRatio(static_cast<double>(count) / p.total(), mv);
  }
  return InBase(sum, base);
}

double Js(const FeatureDistribution& p, const FeatureDistribution& q,
          LogBase base) {
  CheckSameKind(p, q);
  if (p.empty() || q.empty()) {
    throw std::invalid_argument("JS divergence of an empty distribution");
  }
  const double tp = static_cast<double>(p.total());
  const double tq = static_cast<double>(q.total());
  double sum = 0.0;
  auto add = [&](double pv, double qv) {
    const double mv = 0.5 * (pv + qv);
    sum += 0.5 * (XLogRatio(pv, mv) + XLogRatio(qv, mv));
  };
  // Merge walk over the sorted supports.
  auto a = p.counts().begin();
  auto b = q.counts().begin();
  while (a != p.counts().end() || b != q.counts().end()) {
    if (b == q.counts().end() || (a != p.counts().end() && a->first < b->first)) {
      add(a->second / tp, 0.0);
      ++a;
    } else if (a == p.counts().end() || b->first < a->first) {
      add(0.0, b->second / tq);
      ++b;
    } else {
      add(a->second / tp, b->second / tq);
      ++a;
      ++b;
    }
  }
  return InBase(std::max(0.0, sum), base);
}

double OovRate(const FeatureDistribution& source,
               const FeatureDistribution& target, OovWeighting weighting) {
  CheckSameKind(source, target);
  if (target.empty()) throw std::invalid_argument("OOV rate of an empty target");
  std::size_t unseen = 0;
  for (const auto& [value, count] : target.counts()) {
    if (!source.Contains(value)) {
      unseen += weighting == OovWeighting::kOccurrence ? count : 1;
    }
  }
  const std::size_t denominator = weighting == OovWeighting::kOccurrence
                                      ? target.total()
                                      : target.counts().size();
  return static_cast<double>(unseen) / denominator;
}

std::vector<DivergenceRow> DivergenceTable(const Corpus& source,
                                           const Corpus& target,
                                           std::span<const FeatureKind> kinds,
                                           const FeatureOptions& features,
                                           const DivergenceOptions& options) {
  std::vector<DivergenceRow> rows;
  rows.reserve(kinds.size());
  for (FeatureKind kind : kinds) {
    DivergenceRow row{kind, std::nullopt, std::nullopt, std::nullopt};
    if (kind == FeatureKind::kLength) {
      row.avg_length = AverageLength(target, features);
    } else {
      const FeatureDistribution p = Extract(source, kind, features);
      const FeatureDistribution q = Extract(target, kind, features);
      // A feature absent from one side (e.g. no relations in single-node
      // graphs) has no defined divergence; the row reports it as missing.
      if (!p.empty() && !q.empty()) row.js = Js(p, q, options.log_base);
      if (!q.empty()) row.oov = OovRate(p, q, options.oov_weighting);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace crossdom
