#ifndef CROSSDOM_SUBMETRICS_H_
#define CROSSDOM_SUBMETRICS_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string_view>

#include "crossdom/penman.h"
#include "crossdom/smatch.h"
#include "crossdom/triples.h"

namespace crossdom {

// Column order of the fine-grained results table.
inline constexpr std::array<SubMetricKind, 9> kAllSubMetrics = {
    SubMetricKind::kSmatch,   SubMetricKind::kUnlabeled,
    SubMetricKind::kNoWsd,    SubMetricKind::kConcepts,
    SubMetricKind::kWiki,     SubMetricKind::kNer,
    SubMetricKind::kReentrancy, SubMetricKind::kNegation,
    SubMetricKind::kSrl,
};

// Machine name ("nowsd") and table heading ("NoWSD").
std::string_view SubMetricName(SubMetricKind kind);
std::string_view SubMetricHeading(SubMetricKind kind);
std::optional<SubMetricKind> ParseSubMetricKind(std::string_view name);

// Smatch with role labels erased. Unlike Unlabel(), parallel triples keep
// their multiplicity, so erasing labels never lowers a match count. Both
// coarsened scores also try the labeled best alignment, which makes them
// at least the labeled Smatch found with the same options.
ScoreReport UnlabeledScore(const TripleSet& pred, const TripleSet& gold,
                           const SmatchOptions& options = {});
ScoreReport NoWsdScore(const TripleSet& pred, const TripleSet& gold,
                       const SmatchOptions& options = {});

// Multiset F-score: matched is the size of the multiset intersection.
MatchCounts BagMatch(const ItemCounts& pred, const ItemCounts& gold);
ScoreReport BagF1(const ItemCounts& pred, const ItemCounts& gold);

// Counts for one graph pair under one metric.
MatchCounts SubMetricCounts(const TripleSet& pred, const TripleSet& gold,
                            SubMetricKind kind, const SmatchOptions& options);

struct FineGrainedReport {
  std::map<SubMetricKind, ScoreReport> scores;
};

// Micro-averaged corpus scores for `kinds`; Smatch is always included.
FineGrainedReport FineGrained(const Corpus& pred, const Corpus& gold,
                              std::span<const SubMetricKind> kinds,
                              const CorpusScoreOptions& options = {});

}  // namespace crossdom

#endif  // CROSSDOM_SUBMETRICS_H_
