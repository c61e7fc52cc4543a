#include "support/fixtures.h"

#include <fstream>
#include <random>
#include <vector>

namespace crossdom::testing {

namespace {

constexpr std::size_t kChildren = 4;
constexpr std::size_t kKnown = 12;
constexpr std::size_t kNovel = 30;
const char* const kRoles[kChildren] = {"ARG0", "ARG1", "ARG2", "location"};

std::string KnownConcept(std::size_t i) { return "known" + std::to_string(i); }
std::string NovelConcept(std::size_t i) { return "novel" + std::to_string(i); }

CorpusEntry StarEntry(std::string id, const std::vector<std::string>& children) {
  std::vector<Node> nodes = {{"e", "event-01"}};
  std::vector<Edge> edges;
  std::string snt = "event";
  for (std::size_t k = 0; k < children.size(); ++k) {
    const std::string var = "c" + std::to_string(k);
    nodes.push_back({var, children[k]});
    edges.push_back({"e", kRoles[k], var});
    snt += " " + children[k];
  }
  CorpusEntry entry;
  entry.id = std::move(id);
  entry.snt = snt + " .";
  entry.graph = AmrGraph("e", std::move(nodes), std::move(edges), {});
  return entry;
}

}  // namespace

CorrelationFixture MakeCorrelationFixture(std::uint64_t seed,
                                          std::size_t population) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> known(0, kKnown - 1);
  std::uniform_int_distribution<std::size_t> novel(0, kNovel - 1);
  std::uniform_int_distribution<std::size_t> count(0, kChildren);

  CorrelationFixture f;
  for (std::size_t i = 0; i < 60; ++i) {
    std::vector<std::string> children;
    for (std::size_t k = 0; k < kChildren; ++k) {
      children.push_back(KnownConcept(known(rng)));
    }
    f.source.entries.push_back(StarEntry("src" + std::to_string(i), children));
  }
  for (std::size_t i = 0; i < population; ++i) {
    const std::string id = "g" + std::to_string(i);
    const std::size_t novel_count = count(rng);
    const std::size_t noise_count = count(rng);
    std::vector<std::string> children;
    for (std::size_t k = 0; k < kChildren; ++k) {
      children.push_back(k < novel_count ? NovelConcept(novel(rng))
                                         : KnownConcept(known(rng)));
    }
    f.gold.entries.push_back(StarEntry(id, children));

    std::vector<std::string> dropped = children;
    for (std::size_t k = 0; k < novel_count; ++k) dropped[k] = "thing";
    f.correlated.entries.push_back(StarEntry(id, dropped));

    std::vector<std::string> noisy = children;
    for (std::size_t k = 0; k < noise_count; ++k) noisy[k] = "thing";
    f.independent.entries.push_back(StarEntry(id, noisy));
  }
  return f;
}

std::string CorpusText(const Corpus& corpus) {
  std::string out;
  for (const CorpusEntry& entry : corpus.entries) {
    if (entry.id) out += "# ::id " + *entry.id + "\n";
    if (entry.snt) out += "# ::snt " + *entry.snt + "\n";
    out += SerializeGraph(entry.graph) + "\n\n";
  }
  return out;
}

void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << CorpusText(corpus);
}

}  // namespace crossdom::testing
