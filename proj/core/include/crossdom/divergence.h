#ifndef CROSSDOM_DIVERGENCE_H_
#define CROSSDOM_DIVERGENCE_H_

#include <optional>
#include <span>
#include <vector>

#include "crossdom/features.h"
#include "crossdom/penman.h"

namespace crossdom {

enum class LogBase { kNatural, kTwo };

// Occurrence weighting counts every target token; type weighting counts
// each distinct target value once.
enum class OovWeighting { kOccurrence, kType };

struct DivergenceOptions {
  LogBase log_base = LogBase::kNatural;
  OovWeighting oov_weighting = OovWeighting::kOccurrence;
};

// KL(P || M) over the empirical probabilities. Requires the same kind, a
// non-empty P, and support(P) within support(M); throws
// std::invalid_argument otherwise.
double Kl(const FeatureDistribution& p, const FeatureDistribution& m,
          LogBase base = LogBase::kNatural);

// Jensen-Shannon divergence against the mixture M = (P + Q) / 2 taken over
// the union of both supports. Lies in [0, ln 2] nats.
double Js(const FeatureDistribution& p, const FeatureDistribution& q,
          LogBase base = LogBase::kNatural);

// Share of the target that never occurs in the source.
double OovRate(const FeatureDistribution& source,
               const FeatureDistribution& target,
               OovWeighting weighting = OovWeighting::kOccurrence);

struct DivergenceRow {
  FeatureKind kind;
  // Set for distribution features.
  std::optional<double> js;
  std::optional<double> oov;
  // Set for kLength: mean target sentence length.
  std::optional<double> avg_length;
};

std::vector<DivergenceRow> DivergenceTable(
    const Corpus& source, const Corpus& target,
    std::span<const FeatureKind> kinds, const FeatureOptions& features = {},
    const DivergenceOptions& options = {});

}  // namespace crossdom

#endif  // CROSSDOM_DIVERGENCE_H_
