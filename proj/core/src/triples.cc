#include "crossdom/triples.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crossdom {

bool IsInverseRole(std::string_view role) {
  if (role.size() <= 3 || !role.ends_with("-of")) return false;
  return role != "consist-of" && role != "prep-out-of" &&
         role != "prep-on-behalf-of";
}

TripleSet ToTriples(const AmrGraph& graph, const TripleOptions& options) {
  TripleSet out;
  for (const Node& node : graph.nodes()) {
    out.variables.insert(node.variable);
    out.triples.insert({TripleKind::kInstance, std::string(kInstanceRelation),
                        node.variable, node.label});
  }
  for (const Edge& edge : graph.edges()) {
    if (options.normalize_inverse && IsInverseRole(edge.role)) {
      out.triples.insert({TripleKind::kRelation,
                          edge.role.substr(0, edge.role.size() - 3),
                          edge.target, edge.source});
    } else {
      out.triples.insert(
          {TripleKind::kRelation, edge.role, edge.source, edge.target});
    }
  }
  for (const Attribute& attr : graph.attributes()) {
    out.triples.insert(
        {TripleKind::kAttribute, attr.role, attr.source, attr.value});
  }
  if (!graph.empty()) {
    out.triples.insert({TripleKind::kAttribute, std::string(kTopRelation),
                        graph.root(), std::string(kTopValue)});
  }
  return out;
}

TripleSet Unlabel(const TripleSet& triples) {
  TripleSet out;
  out.variables = triples.variables;
  for (Triple t : triples.triples) {
    if (t.kind != TripleKind::kInstance && t.relation != kTopRelation) {
      t.relation = std::string(kUnlabeledRelation);
    }
    out.triples.insert(std::move(t));
  }
  return out;
}

std::string StripSense(std::string_view label) {
  const std::size_t n = label.size();
  if (n >= 4 && label[n - 3] == '-' &&
      std::isdigit(static_cast<unsigned char>(label[n - 2])) &&
      std::isdigit(static_cast<unsigned char>(label[n - 1]))) {
    return std::string(label.substr(0, n - 3));
  }
  return std::string(label);
}

TripleSet StripSenses(const TripleSet& triples) {
  TripleSet out;
  out.variables = triples.variables;
  for (Triple t : triples.triples) {
    if (t.kind == TripleKind::kInstance) t.second = StripSense(t.second);
    out.triples.insert(std::move(t));
  }
  return out;
}

namespace {

using ConceptIndex = std::map<std::string, std::string, std::less<>>;

ConceptIndex IndexConcepts(const TripleSet& triples) {
  ConceptIndex index;
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kInstance) index.emplace(t.first, t.second);
  }
  return index;
}

// Returns the numeric suffix of "opN", or -1.
int OpIndex(std::string_view relation) {
  if (relation.size() < 3 || !relation.starts_with("op")) return -1;
  int value = 0;
  auto [ptr, ec] = std::from_chars(relation.data() + 2,
                                   relation.data() + relation.size(), value);
  if (ec != std::errc() || ptr != relation.data() + relation.size()) return -1;
  return value;
}

bool IsArgRole(std::string_view relation) {
  return relation.size() == 4 && relation.starts_with("ARG") &&
         std::isdigit(static_cast<unsigned char>(relation[3]));
}

// Relation triple with any "-of" inverse undone, for the reduced views.
Triple Normalized(const Triple& t) {
  if (t.kind == TripleKind::kRelation && IsInverseRole(t.relation)) {
    return {TripleKind::kRelation, t.relation.substr(0, t.relation.size() - 3),
            t.second, t.first};
  }
  return t;
}

// Keeps the selected relation triples plus the instance triples of their
// endpoints. TOP is never included.
template <typename Keep>
TripleSet ReduceRelations(const TripleSet& triples, Keep keep) {
  TripleSet out;
  std::vector<Triple> relations;
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kRelation) relations.push_back(Normalized(t));
  }
  for (const Triple& t : relations) {
    if (!keep(t, relations)) continue;
    out.variables.insert(t.first);
    out.variables.insert(t.second);
    out.triples.insert(t);
  }
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kInstance && out.variables.count(t.first) > 0) {
      out.triples.insert(t);
    }
  }
  return out;
}

ItemCounts ConceptItems(const TripleSet& triples) {
  ItemCounts items;
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kInstance) ++items[t.second];
  }
  return items;
}

ItemCounts WikiItems(const TripleSet& triples) {
  ItemCounts items;
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kAttribute && t.relation == "wiki") {
      ++items[t.second];
    }
  }
  return items;
}

ItemCounts NegationItems(const TripleSet& triples) {
  const ConceptIndex concepts = IndexConcepts(triples);
  ItemCounts items;
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kAttribute && t.relation == "polarity" &&
        t.second == "-") {
      auto it = concepts.find(t.first);
      if (it != concepts.end()) ++items[it->second];
    }
  }
  return items;
}

ItemCounts NerItems(const TripleSet& triples) {
  const ConceptIndex concepts = IndexConcepts(triples);
  std::map<std::string, std::vector<std::pair<int, std::string>>, std::less<>>
      ops;
  for (const Triple& t : triples.triples) {
    if (t.kind != TripleKind::kAttribute) continue;
    const int index = OpIndex(t.relation);
    if (index >= 0) ops[t.first].emplace_back(index, t.second);
  }
  ItemCounts items;
  for (const Triple& raw : triples.triples) {
    if (raw.kind != TripleKind::kRelation) continue;
    const Triple t = Normalized(raw);
    if (t.relation != "name") continue;
    auto type = concepts.find(t.first);
    if (type == concepts.end()) continue;
    std::string item = type->second;
    auto it = ops.find(t.second);
    if (it != ops.end()) {
      auto sequence = it->second;
      std::sort(sequence.begin(), sequence.end());
      for (const auto& [index, value] : sequence) {
        item += kItemSeparator;
        item += value;
      }
    }
    ++items[item];
  }
  return items;
}

}  // namespace

SubMetricView ExtractSubMetricView(const TripleSet& triples,
                                   SubMetricKind metric) {
  switch (metric) {
    case SubMetricKind::kConcepts:
      return ConceptItems(triples);
    case SubMetricKind::kWiki:
      return WikiItems(triples);
    case SubMetricKind::kNer:
      return NerItems(triples);
    case SubMetricKind::kNegation:
      return NegationItems(triples);
    case SubMetricKind::kReentrancy:
      return ReduceRelations(
          triples, [](const Triple& t, const std::vector<Triple>& relations) {
            auto incoming = std::count_if(
                relations.begin(), relations.end(),
                [&](const Triple& r) { return r.second == t.second; });
            return incoming >= 2;
          });
    case SubMetricKind::kSrl:
      return ReduceRelations(triples,
                             [](const Triple& t, const std::vector<Triple>&) {
                               return IsArgRole(t.relation);
                             });
    case SubMetricKind::kSmatch:
    case SubMetricKind::kUnlabeled:
    case SubMetricKind::kNoWsd:
      break;
  }
  throw std::invalid_argument(
      "sub-metric view is only defined for concepts, wiki, ner, negation, "
      "reentrancy and srl");
}

}  // namespace crossdom
