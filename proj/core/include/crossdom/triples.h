#ifndef CROSSDOM_TRIPLES_H_
#define CROSSDOM_TRIPLES_H_

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "crossdom/penman.h"

namespace crossdom {

enum class TripleKind { kInstance, kAttribute, kRelation };

// Smatch triple. For instances `relation` is "instance" and `second` the
// concept; for attributes `second` is the constant; for relations `second`
// is the target variable.
struct Triple {
  TripleKind kind = TripleKind::kInstance;
  std::string relation;
  std::string first;
  std::string second;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline constexpr std::string_view kInstanceRelation = "instance";
inline constexpr std::string_view kTopRelation = "TOP";
inline constexpr std::string_view kTopValue = "top";
inline constexpr std::string_view kUnlabeledRelation = "REL";

// Joins the parts of composite items (NER entries, n-grams, triplets).
// U+241F SYMBOL FOR UNIT SEPARATOR, never produced by the PENMAN lexer.
inline constexpr std::string_view kItemSeparator = "\xE2\x90\x9F";

struct TripleSet {
  std::set<Triple> triples;
  std::set<std::string, std::less<>> variables;

  std::size_t size() const { return triples.size(); }
  bool empty() const { return triples.empty(); }

  friend bool operator==(const TripleSet&, const TripleSet&) = default;
};

struct TripleOptions {
  // Rewrite `x :R-of y` as `y :R x` before scoring.
  bool normalize_inverse = true;
};

TripleSet ToTriples(const AmrGraph& graph, const TripleOptions& options = {});

// True for "-of" roles that are inverses. :consist-of and the two
// prep-*-of roles are ordinary roles whose names happen to end in "-of".
bool IsInverseRole(std::string_view role);

// Replaces every relation and attribute label except TOP with REL.
TripleSet Unlabel(const TripleSet& triples);

// Drops a trailing two-digit PropBank sense: "go-02" -> "go".
std::string StripSense(std::string_view label);
TripleSet StripSenses(const TripleSet& triples);

enum class SubMetricKind {
  kSmatch,
  kUnlabeled,
  kNoWsd,
  kConcepts,
  kWiki,
  kNer,
  kReentrancy,
  kNegation,
  kSrl,
};

// Multiset of items with their multiplicities.
using ItemCounts = std::map<std::string, std::size_t, std::less<>>;

// Bag of items for the F-score metrics, reduced triples for the
// Smatch-based ones.
using SubMetricView = std::variant<ItemCounts, TripleSet>;

// Valid for concepts, wiki, ner, negation, reentrancy and srl; throws
// std::invalid_argument for the three whole-graph metrics.
SubMetricView ExtractSubMetricView(const TripleSet& triples,
                                   SubMetricKind metric);

}  // namespace crossdom

#endif  // CROSSDOM_TRIPLES_H_
