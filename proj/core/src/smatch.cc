#include "crossdom/smatch.h"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <unordered_set>

#include "crossdom/errors.h"
#include "crossdom/parallel.h"

namespace crossdom {

ScoreReport ScoreReport::FromCounts(const MatchCounts& counts) {
  ScoreReport r;
  r.matched = counts.matched;
  r.pred_total = counts.pred_total;
  r.gold_total = counts.gold_total;
  if (counts.pred_total == 0 && counts.gold_total == 0) {
    r.precision = r.recall = r.f1 = 1.0;
    return r;
  }
  r.precision = counts.pred_total == 0
                    ? 0.0
                    : static_cast<double>(counts.matched) / counts.pred_total;
  r.recall = counts.gold_total == 0
                 ? 0.0
                 : static_cast<double>(counts.matched) / counts.gold_total;
  r.f1 = r.precision + r.recall == 0.0
             ? 0.0
             : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

void Alignment::Validate(const TripleSet& pred, const TripleSet& gold) const {
  std::set<std::string_view> targets;
  for (const auto& [from, to] : mapping) {
    if (pred.variables.count(from) == 0) {
      throw std::invalid_argument("alignment maps unknown predicted variable '" +
                                  from + "'");
    }
    if (gold.variables.count(to) == 0) {
      throw std::invalid_argument("alignment targets unknown gold variable '" +
                                  to + "'");
    }
    if (!targets.insert(to).second) {
      throw std::invalid_argument("alignment is not injective at gold '" + to +
                                  "'");
    }
  }
}

std::size_t MatchCount(const TripleSet& pred, const TripleSet& gold,
                       const Alignment& alignment) {
  alignment.Validate(pred, gold);
  auto rename = [&](const std::string& variable) -> const std::string* {
    auto it = alignment.mapping.find(variable);
    return it == alignment.mapping.end() ? nullptr : &it->second;
  };
  std::size_t count = 0;
  for (const Triple& t : pred.triples) {
    const std::string* first = rename(t.first);
    if (first == nullptr) continue;
    Triple renamed{t.kind, t.relation, *first, t.second};
    if (t.kind == TripleKind::kRelation) {
      const std::string* second = rename(t.second);
      if (second == nullptr) continue;
      renamed.second = *second;
    }
    if (gold.triples.count(renamed) > 0) ++count;
  }
  return count;
}

namespace {

constexpr int kUnmapped = -1;

// Integer form of an alignment problem. The score of a mapping splits into
// per-variable terms (instance and attribute triples) and per-pair terms
// (relation triples), which lets single moves be evaluated incrementally.
class HillClimber {
 public:
  HillClimber(const TripleSet& pred, const TripleSet& gold)
      : pred_vars_(pred.variables.begin(), pred.variables.end()),
        gold_vars_(gold.variables.begin(), gold.variables.end()),
        n_(pred_vars_.size()),
        m_(gold_vars_.size()),
        unary_(n_ * m_, 0),
        touching_(n_) {
    auto pred_index = IndexOf(pred_vars_);
    auto gold_index = IndexOf(gold_vars_);

    // Gold variables carrying each (kind, relation, value) unary triple.
    std::map<std::tuple<TripleKind, std::string_view, std::string_view>,
             std::vector<int>>
        gold_unary;
    std::map<std::string_view, std::uint64_t> relation_ids;
    for (const Triple& t : gold.triples) {
      const int u = gold_index.at(t.first);
      if (t.kind == TripleKind::kRelation) {
        const auto id = relation_ids.emplace(t.relation, relation_ids.size())
                            .first->second;
        gold_relations_.insert(Key(id, u, gold_index.at(t.second)));
      } else {
        gold_unary[{t.kind, t.relation, t.second}].push_back(u);
      }
    }
    for (const Triple& t : pred.triples) {
      const int v = pred_index.at(t.first);
      if (t.kind == TripleKind::kRelation) {
        auto id = relation_ids.find(t.relation);
        if (id == relation_ids.end()) continue;  // can never match
        const int w = pred_index.at(t.second);
        const std::size_t r = relations_.size();
        relations_.push_back({id->second, v, w});
        touching_[v].push_back(r);
        if (w != v) touching_[w].push_back(r);
      } else {
        auto it = gold_unary.find({t.kind, t.relation, t.second});
        if (it == gold_unary.end()) continue;
        for (int u : it->second) ++unary_[v * m_ + u];
      }
    }

    for (const Triple& t : pred.triples) {
      if (t.kind == TripleKind::kInstance) {
        pred_concepts_.emplace(pred_index.at(t.first), t.second);
      }
    }
    for (const Triple& t : gold.triples) {
      if (t.kind == TripleKind::kInstance) {
        gold_concepts_.emplace(gold_index.at(t.first), t.second);
      }
    }
  }

  std::size_t Search(const SmatchOptions& options, std::size_t ceiling,
                     std::vector<int>& best_mapping) {
    std::size_t best = 0;
    bool have_best = false;
    for (int restart = 0; restart < options.restarts; ++restart) {
      std::vector<int> mapping =
          restart == 0 ? GreedyStart() : RandomStart(options.seed, restart);
      const std::size_t score = Climb(mapping);
      if (!have_best || score > best) {
        best = score;
        best_mapping = mapping;
        have_best = true;
      }
      if (best >= ceiling) break;
    }
    return best;
  }

  Alignment ToAlignment(const std::vector<int>& mapping) const {
    Alignment alignment;
    for (std::size_t v = 0; v < n_; ++v) {
      if (mapping[v] != kUnmapped) {
        alignment.mapping.emplace(pred_vars_[v], gold_vars_[mapping[v]]);
      }
    }
    return alignment;
  }

 private:
  struct PredRelation {
    std::uint64_t relation;
    int first;
    int second;
  };

  static std::map<std::string_view, int> IndexOf(
      const std::vector<std::string>& vars) {
    std::map<std::string_view, int> index;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      index.emplace(vars[i], static_cast<int>(i));
    }
    return index;
  }

  std::uint64_t Key(std::uint64_t relation, int first, int second) const {
    return (relation * m_ + static_cast<std::uint64_t>(first)) * m_ +
           static_cast<std::uint64_t>(second);
  }

  int Hit(const PredRelation& r, const std::vector<int>& mapping) const {
    const int u = mapping[r.first];
    const int w = mapping[r.second];
    if (u == kUnmapped || w == kUnmapped) return 0;
    return gold_relations_.count(Key(r.relation, u, w)) > 0 ? 1 : 0;
  }

  int Unary(std::size_t v, int u) const {
    return u == kUnmapped ? 0 : unary_[v * m_ + u];
  }

  std::size_t Score(const std::vector<int>& mapping) const {
    std::size_t score = 0;
    for (std::size_t v = 0; v < n_; ++v) score += Unary(v, mapping[v]);
    for (const PredRelation& r : relations_) score += Hit(r, mapping);
    return score;
  }

  // Sum of relation hits over triples touching v or w (each counted once).
  int LocalHits(std::size_t v, std::size_t w,
                const std::vector<int>& mapping) const {
    int hits = 0;
    for (std::size_t r : touching_[v]) hits += Hit(relations_[r], mapping);
    if (w != v) {
      for (std::size_t r : touching_[w]) {
        const PredRelation& rel = relations_[r];
        if (rel.first == static_cast<int>(v) ||
            rel.second == static_cast<int>(v)) {
          continue;
        }
        hits += Hit(rel, mapping);
      }
    }
    return hits;
  }

  std::vector<int> GreedyStart() const {
    std::vector<int> mapping(n_, kUnmapped);
    std::vector<bool> used(m_, false);
    for (std::size_t v = 0; v < n_; ++v) {
      auto concept_it = pred_concepts_.find(static_cast<int>(v));
      if (concept_it == pred_concepts_.end()) continue;
      for (std::size_t u = 0; u < m_; ++u) {
        if (used[u]) continue;
        auto gold_it = gold_concepts_.find(static_cast<int>(u));
        if (gold_it != gold_concepts_.end() &&
            gold_it->second == concept_it->second) {
          mapping[v] = static_cast<int>(u);
          used[u] = true;
          break;
        }
      }
    }
    return mapping;
  }

  std::vector<int> RandomStart(std::uint64_t seed, int restart) const {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::vector<int> slots(std::max(n_, m_), kUnmapped);
    std::iota(slots.begin(), slots.begin() + m_, 0);
    std::shuffle(slots.begin(), slots.end(), rng);
    slots.resize(n_);
    return slots;
  }

  // Applies the best improving move (remap one variable to an unused gold
  // variable, or swap two mappings) until no move improves the score.
  std::size_t Climb(std::vector<int>& mapping) const {
    std::size_t score = Score(mapping);
    std::vector<bool> used(m_, false);
    for (int u : mapping) {
      if (u != kUnmapped) used[u] = true;
    }
    while (true) {
      int best_delta = 0;
      std::size_t best_v = 0;
      std::size_t best_w = 0;
      int best_u = kUnmapped;
      bool best_is_swap = false;

      for (std::size_t v = 0; v < n_; ++v) {
        const int old = mapping[v];
        const int before = Unary(v, old) + LocalHits(v, v, mapping);
        for (std::size_t u = 0; u < m_; ++u) {
          if (used[u]) continue;
          mapping[v] = static_cast<int>(u);
          const int delta =
              Unary(v, static_cast<int>(u)) + LocalHits(v, v, mapping) - before;
          mapping[v] = old;
          if (delta > best_delta) {
            best_delta = delta;
            best_v = v;
            best_u = static_cast<int>(u);
            best_is_swap = false;
          }
        }
      }
      for (std::size_t v = 0; v < n_; ++v) {
        for (std::size_t w = v + 1; w < n_; ++w) {
          const int a = mapping[v];
          const int b = mapping[w];
          if (a == b) continue;  // both unmapped
          const int before =
              Unary(v, a) + Unary(w, b) + LocalHits(v, w, mapping);
          mapping[v] = b;
          mapping[w] = a;
          const int delta = Unary(v, b) + Unary(w, a) +
                            LocalHits(v, w, mapping) - before;
          mapping[v] = a;
          mapping[w] = b;
          if (delta > best_delta) {
            best_delta = delta;
            best_v = v;
            best_w = w;
            best_is_swap = true;
          }
        }
      }

      if (best_delta <= 0) return score;
      if (best_is_swap) {
        std::swap(mapping[best_v], mapping[best_w]);
      } else {
        if (mapping[best_v] != kUnmapped) used[mapping[best_v]] = false;
        mapping[best_v] = best_u;
        used[best_u] = true;
      }
      score += static_cast<std::size_t>(best_delta);
    }
  }

  std::vector<std::string> pred_vars_;
  std::vector<std::string> gold_vars_;
  std::size_t n_;
  std::size_t m_;
  std::vector<int> unary_;  // n_ x m_
  std::vector<PredRelation> relations_;
  std::vector<std::vector<std::size_t>> touching_;
  std::unordered_set<std::uint64_t> gold_relations_;
  std::map<int, std::string> pred_concepts_;
  std::map<int, std::string> gold_concepts_;
};

}  // namespace

SmatchResult SmatchSearch(const TripleSet& pred, const TripleSet& gold,
                          const SmatchOptions& options) {
  if (options.restarts < 1) {
    throw std::invalid_argument("smatch restarts must be at least 1");
  }
  HillClimber climber(pred, gold);
  std::vector<int> mapping;
  const std::size_t ceiling = std::min(pred.size(), gold.size());
  const std::size_t matched = climber.Search(options, ceiling, mapping);
  SmatchResult result;
  result.report = ScoreReport::FromCounts({matched, pred.size(), gold.size()});
  result.alignment = climber.ToAlignment(mapping);
  return result;
}

ScoreReport SmatchScore(const TripleSet& pred, const TripleSet& gold,
                        const SmatchOptions& options) {
  return SmatchSearch(pred, gold, options).report;
}

namespace {

// Brute-force oracle. Triples are interned to integers and matched by plain
// set membership after renaming, independent of the hill climber's
// decomposition.
class ExhaustiveMatcher {
 public:
  ExhaustiveMatcher(const TripleSet& pred, const TripleSet& gold)
      : pred_vars_(pred.variables.begin(), pred.variables.end()),
        gold_vars_(gold.variables.begin(), gold.variables.end()) {
    std::map<std::string_view, int> pred_index;
    std::map<std::string_view, int> gold_index;
    for (std::size_t i = 0; i < pred_vars_.size(); ++i) {
      pred_index.emplace(pred_vars_[i], static_cast<int>(i));
    }
    for (std::size_t i = 0; i < gold_vars_.size(); ++i) {
      gold_index.emplace(gold_vars_[i], static_cast<int>(i));
    }
    auto intern = [this](std::string_view s) {
      return strings_.emplace(std::string(s), strings_.size()).first->second;
    };
    for (const Triple& t : gold.triples) {
      const int second = t.kind == TripleKind::kRelation
                             ? gold_index.at(t.second)
                             : static_cast<int>(intern(t.second));
      gold_.insert({static_cast<int>(t.kind),
                    static_cast<int>(intern(t.relation)),
                    gold_index.at(t.first), second});
    }
    for (const Triple& t : pred.triples) {
      const int second = t.kind == TripleKind::kRelation
                             ? pred_index.at(t.second)
                             : static_cast<int>(intern(t.second));
      pred_.push_back({static_cast<int>(t.kind),
                       static_cast<int>(intern(t.relation)),
                       pred_index.at(t.first), second});
    }
  }

  std::size_t Best() {
    mapping_.assign(pred_vars_.size(), kUnmapped);
    used_.assign(gold_vars_.size(), false);
    best_ = 0;
    Enumerate(0);
    return best_;
  }

 private:
  using Tuple = std::array<int, 4>;  // kind, relation, first, second

  void Enumerate(std::size_t v) {
    if (v == pred_vars_.size()) {
      best_ = std::max(best_, Count());
      return;
    }
    mapping_[v] = kUnmapped;
    Enumerate(v + 1);
    for (std::size_t u = 0; u < gold_vars_.size(); ++u) {
      if (used_[u]) continue;
      used_[u] = true;
      mapping_[v] = static_cast<int>(u);
      Enumerate(v + 1);
      mapping_[v] = kUnmapped;
      used_[u] = false;
    }
  }

  std::size_t Count() const {
    std::size_t count = 0;
    for (Tuple t : pred_) {
      t[2] = mapping_[t[2]];
      if (t[2] == kUnmapped) continue;
      if (t[0] == static_cast<int>(TripleKind::kRelation)) {
        t[3] = mapping_[t[3]];
        if (t[3] == kUnmapped) continue;
      }
      count += gold_.count(t);
    }
    return count;
  }

  std::vector<std::string> pred_vars_;
  std::vector<std::string> gold_vars_;
  std::map<std::string, std::size_t, std::less<>> strings_;
  std::set<Tuple> gold_;
  std::vector<Tuple> pred_;
  std::vector<int> mapping_;
  std::vector<bool> used_;
  std::size_t best_ = 0;
};

}  // namespace

ScoreReport SmatchExact(const TripleSet& pred, const TripleSet& gold,
                        std::size_t max_variables) {
  if (pred.variables.size() > max_variables) {
    throw std::invalid_argument(
        "exhaustive smatch limited to " + std::to_string(max_variables) +
        " predicted variables, got " + std::to_string(pred.variables.size()));
  }
  ExhaustiveMatcher matcher(pred, gold);
  return ScoreReport::FromCounts({matcher.Best(), pred.size(), gold.size()});
}

std::vector<std::pair<std::size_t, std::size_t>> PairEntries(
    const Corpus& pred, const Corpus& gold, PairBy pair_by) {
  if (pred.size() != gold.size()) {
    throw DataError("cannot pair corpora of different lengths: " +
                    std::to_string(pred.size()) + " predicted vs " +
                    std::to_string(gold.size()) + " gold entries");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(gold.size());
  if (pair_by == PairBy::kPosition) {
    for (std::size_t i = 0; i < gold.size(); ++i) pairs.emplace_back(i, i);
    return pairs;
  }
  std::map<std::string, std::size_t, std::less<>> pred_ids;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto& id = pred.entries[i].id;
    if (!id) {
      throw DataError("predicted entry " + std::to_string(i) +
                      " has no ::id; cannot pair by id");
    }
    if (!pred_ids.emplace(*id, i).second) {
      throw DataError("duplicate predicted ::id '" + *id + "'");
    }
  }
  std::set<std::string, std::less<>> seen;
  for (std::size_t j = 0; j < gold.size(); ++j) {
    const auto& id = gold.entries[j].id;
    if (!id) {
      throw DataError("gold entry " + std::to_string(j) +
                      " has no ::id; cannot pair by id");
    }
    if (!seen.insert(*id).second) {
      throw DataError("duplicate gold ::id '" + *id + "'");
    }
    auto it = pred_ids.find(*id);
    if (it == pred_ids.end()) {
      throw DataError("gold ::id '" + *id + "' has no predicted counterpart");
    }
    pairs.emplace_back(it->second, j);
  }
  return pairs;
}

std::vector<MatchCounts> PairwiseSmatch(const Corpus& pred, const Corpus& gold,
                                        const CorpusScoreOptions& options) {
  if (options.restarts < 1) {
    throw std::invalid_argument("smatch restarts must be at least 1");
  }
  const auto pairs = PairEntries(pred, gold, options.pair_by);
  std::vector<MatchCounts> counts(pairs.size());
  ParallelFor(pairs.size(), options.threads, [&](std::size_t i) {
    const auto [p, g] = pairs[i];
    const TripleSet pt = ToTriples(pred.entries[p].graph, options.triples);
    const TripleSet gt = ToTriples(gold.entries[g].graph, options.triples);
    counts[i] = SmatchScore(pt, gt, {options.restarts, options.seed + i})
                    .counts();
  });
  return counts;
}

ScoreReport CorpusSmatch(const Corpus& pred, const Corpus& gold,
                         const CorpusScoreOptions& options) {
  MatchCounts total;
  for (const MatchCounts& c : PairwiseSmatch(pred, gold, options)) total += c;
  return ScoreReport::FromCounts(total);
}

}  // namespace crossdom
