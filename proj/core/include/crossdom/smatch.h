#ifndef CROSSDOM_SMATCH_H_
#define CROSSDOM_SMATCH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crossdom/penman.h"
#include "crossdom/triples.h"

namespace crossdom {

// Raw triple counts; summing them across graph pairs gives micro-averages.
struct MatchCounts {
  std::size_t matched = 0;
  std::size_t pred_total = 0;
  std::size_t gold_total = 0;

  MatchCounts& operator+=(const MatchCounts& other) {
    matched += other.matched;
    pred_total += other.pred_total;
    gold_total += other.gold_total;
    return *this;
  }
  friend bool operator==(const MatchCounts&, const MatchCounts&) = default;
};

struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matched = 0;
  std::size_t pred_total = 0;
  std::size_t gold_total = 0;

  // Empty against empty is a perfect score; an empty side against a
  // non-empty one scores zero.
  static ScoreReport FromCounts(const MatchCounts& counts);
  MatchCounts counts() const { return {matched, pred_total, gold_total}; }
};

// Partial injective map from predicted variables to gold variables.
struct Alignment {
  std::map<std::string, std::string, std::less<>> mapping;

  // Throws std::invalid_argument if the map is not injective or names
  // variables outside the two sets.
  void Validate(const TripleSet& pred, const TripleSet& gold) const;
};

// Number of predicted triples that, renamed through `alignment`, appear in
// `gold`. Unmapped variables match nothing.
std::size_t MatchCount(const TripleSet& pred, const TripleSet& gold,
                       const Alignment& alignment);

struct SmatchOptions {
  int restarts = 4;
  std::uint64_t seed = 0;
};

struct SmatchResult {
  ScoreReport report;
  Alignment alignment;
};

// Restarted best-improvement hill climbing over alignments. The first start
// pairs variables with equal concepts; later starts are seeded random
// injective maps. Throws std::invalid_argument when restarts < 1.
SmatchResult SmatchSearch(const TripleSet& pred, const TripleSet& gold,
                          const SmatchOptions& options = {});
ScoreReport SmatchScore(const TripleSet& pred, const TripleSet& gold,
                        const SmatchOptions& options = {});

inline constexpr std::size_t kDefaultExactVariableCap = 8;

// Exhaustive search over every partial injective alignment. Exponential;
// throws std::invalid_argument when pred has more than `max_variables`.
ScoreReport SmatchExact(const TripleSet& pred, const TripleSet& gold,
                        std::size_t max_variables = kDefaultExactVariableCap);

enum class PairBy { kPosition, kId };

// Pairs (pred index, gold index) in gold order. Throws DataError on a length
// mismatch, and for kId on missing, duplicate or unmatched ids.
std::vector<std::pair<std::size_t, std::size_t>> PairEntries(
    const Corpus& pred, const Corpus& gold, PairBy pair_by);

struct CorpusScoreOptions {
  int restarts = 4;
  std::uint64_t seed = 0;
  PairBy pair_by = PairBy::kPosition;
  TripleOptions triples;
  // 0 picks the default thread count (see parallel.h).
  std::size_t threads = 0;
};

// Per-pair Smatch counts in pairing order. Pair i is searched with seed
// `options.seed + i`, so results do not depend on scheduling.
std::vector<MatchCounts> PairwiseSmatch(const Corpus& pred, const Corpus& gold,
                                        const CorpusScoreOptions& options = {});

// Micro-averaged Smatch over paired entries.
ScoreReport CorpusSmatch(const Corpus& pred, const Corpus& gold,
                         const CorpusScoreOptions& options = {});

}  // namespace crossdom

#endif  // CROSSDOM_SMATCH_H_
