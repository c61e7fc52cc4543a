#include "crossdom/submetrics.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "crossdom/parallel.h"

namespace crossdom {

std::string_view SubMetricName(SubMetricKind kind) {
  switch (kind) {
    case SubMetricKind::kSmatch: return "smatch";
    case SubMetricKind::kUnlabeled: return "unlabeled";
    case SubMetricKind::kNoWsd: return "nowsd";
    case SubMetricKind::kConcepts: return "concepts";
    case SubMetricKind::kWiki: return "wiki";
    case SubMetricKind::kNer: return "ner";
    case SubMetricKind::kReentrancy: return "reentrancy";
    case SubMetricKind::kNegation: return "negation";
    case SubMetricKind::kSrl: return "srl";
  }
  return "unknown";
}

std::string_view SubMetricHeading(SubMetricKind kind) {
  switch (kind) {
    case SubMetricKind::kSmatch: return "Smatch";
    case SubMetricKind::kUnlabeled: return "Unlab.";
    case SubMetricKind::kNoWsd: return "NoWSD";
    case SubMetricKind::kConcepts: return "Con.";
    case SubMetricKind::kWiki: return "Wiki.";
    case SubMetricKind::kNer: return "NER";
    case SubMetricKind::kReentrancy: return "Reent.";
    case SubMetricKind::kNegation: return "Neg.";
    case SubMetricKind::kSrl: return "SRL";
  }
  return "?";
}

std::optional<SubMetricKind> ParseSubMetricKind(std::string_view name) {
  for (SubMetricKind kind : kAllSubMetrics) {
    if (SubMetricName(kind) == name) return kind;
  }
  return std::nullopt;
}

namespace {

// Unlabel() with multiplicity kept: the k-th triple sharing the same
// endpoints is labeled "REL#k", so matches between two such groups count
// min(k_pred, k_gold) as a multiset intersection would.
TripleSet UnlabelCounted(const TripleSet& t) {
  TripleSet out;
  out.variables = t.variables;
  std::map<std::tuple<TripleKind, std::string_view, std::string_view>,
           std::size_t>
      seen;
  for (const Triple& x : t.triples) {
    if (x.kind == TripleKind::kInstance || x.relation == kTopRelation) {
      out.triples.insert(x);
      continue;
    }
    const std::size_t k = ++seen[{x.kind, x.first, x.second}];
    std::string label(kUnlabeledRelation);
    if (k > 1) label += "#" + std::to_string(k);
    out.triples.insert({x.kind, std::move(label), x.first, x.second});
  }
  return out;
}

// Scores a coarsened pair. The labeled alignment stays a valid candidate
// after coarsening, so the result never falls below its count.
ScoreReport CoarsenedScore(const TripleSet& pred, const TripleSet& gold,
                           const SmatchOptions& options,
                           const Alignment& labeled) {
  SmatchResult result = SmatchSearch(pred, gold, options);
  const std::size_t floor = MatchCount(pred, gold, labeled);
  if (floor > result.report.matched) {
    return ScoreReport::FromCounts({floor, pred.size(), gold.size()});
  }
  return result.report;
}

MatchCounts CoarsenedCounts(const TripleSet& pred, const TripleSet& gold,
                            SubMetricKind kind, const SmatchOptions& options,
                            const Alignment& labeled) {
  if (kind == SubMetricKind::kUnlabeled) {
    return CoarsenedScore(UnlabelCounted(pred), UnlabelCounted(gold), options,
                          labeled)
        .counts();
  }
  return CoarsenedScore(StripSenses(pred), StripSenses(gold), options, labeled)
      .counts();
}

}  // namespace

ScoreReport UnlabeledScore(const TripleSet& pred, const TripleSet& gold,
                           const SmatchOptions& options) {
  const Alignment labeled = SmatchSearch(pred, gold, options).alignment;
  return ScoreReport::FromCounts(CoarsenedCounts(
      pred, gold, SubMetricKind::kUnlabeled, options, labeled));
}

ScoreReport NoWsdScore(const TripleSet& pred, const TripleSet& gold,
                       const SmatchOptions& options) {
  const Alignment labeled = SmatchSearch(pred, gold, options).alignment;
  return ScoreReport::FromCounts(
      CoarsenedCounts(pred, gold, SubMetricKind::kNoWsd, options, labeled));
}

MatchCounts BagMatch(const ItemCounts& pred, const ItemCounts& gold) {
  MatchCounts counts;
  for (const auto& [item, n] : pred) {
    counts.pred_total += n;
    auto it = gold.find(item);
    if (it != gold.end()) counts.matched += std::min(n, it->second);
  }
  for (const auto& [item, n] : gold) counts.gold_total += n;
  return counts;
}

ScoreReport BagF1(const ItemCounts& pred, const ItemCounts& gold) {
  return ScoreReport::FromCounts(BagMatch(pred, gold));
}

MatchCounts SubMetricCounts(const TripleSet& pred, const TripleSet& gold,
                            SubMetricKind kind, const SmatchOptions& options) {
  switch (kind) {
    case SubMetricKind::kSmatch:
      return SmatchScore(pred, gold, options).counts();
    case SubMetricKind::kUnlabeled:
      return UnlabeledScore(pred, gold, options).counts();
    case SubMetricKind::kNoWsd:
      return NoWsdScore(pred, gold, options).counts();
    case SubMetricKind::kReentrancy:
    case SubMetricKind::kSrl:
      return SmatchScore(
                 std::get<TripleSet>(ExtractSubMetricView(pred, kind)),
                 std::get<TripleSet>(ExtractSubMetricView(gold, kind)),
                 options)
          .counts();
    case SubMetricKind::kConcepts:
    case SubMetricKind::kWiki:
    case SubMetricKind::kNer:
    case SubMetricKind::kNegation:
      return BagMatch(std::get<ItemCounts>(ExtractSubMetricView(pred, kind)),
                      std::get<ItemCounts>(ExtractSubMetricView(gold, kind)));
  }
  throw std::invalid_argument("unknown sub-metric");
}

FineGrainedReport FineGrained(const Corpus& pred, const Corpus& gold,
                              std::span<const SubMetricKind> kinds,
                              const CorpusScoreOptions& options) {
  if (options.restarts < 1) {
    throw std::invalid_argument("smatch restarts must be at least 1");
  }
  std::set<SubMetricKind> wanted(kinds.begin(), kinds.end());
  wanted.insert(SubMetricKind::kSmatch);
  const std::vector<SubMetricKind> order(wanted.begin(), wanted.end());

  const auto pairs = PairEntries(pred, gold, options.pair_by);
  std::vector<std::vector<MatchCounts>> per_pair(
      pairs.size(), std::vector<MatchCounts>(order.size()));
  ParallelFor(pairs.size(), options.threads, [&](std::size_t i) {
    const auto [p, g] = pairs[i];
    const TripleSet pt = ToTriples(pred.entries[p].graph, options.triples);
    const TripleSet gt = ToTriples(gold.entries[g].graph, options.triples);
    const SmatchOptions smatch{options.restarts, options.seed + i};
    const SmatchResult labeled = SmatchSearch(pt, gt, smatch);
    for (std::size_t k = 0; k < order.size(); ++k) {
      switch (order[k]) {
        case SubMetricKind::kSmatch:
          per_pair[i][k] = labeled.report.counts();
          break;
        case SubMetricKind::kUnlabeled:
        case SubMetricKind::kNoWsd:
          per_pair[i][k] =
              CoarsenedCounts(pt, gt, order[k], smatch, labeled.alignment);
          break;
        default:
          per_pair[i][k] = SubMetricCounts(pt, gt, order[k], smatch);
      }
    }
  });

  FineGrainedReport report;
  for (std::size_t k = 0; k < order.size(); ++k) {
    MatchCounts total;
    for (const auto& counts : per_pair) total += counts[k];
    report.scores.emplace(order[k], ScoreReport::FromCounts(total));
  }
  return report;
}

}  // namespace crossdom
