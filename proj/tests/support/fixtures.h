#ifndef CROSSDOM_TESTS_SUPPORT_FIXTURES_H_
#define CROSSDOM_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "crossdom/penman.h"

namespace crossdom::testing {

// Star-shaped gold graphs whose children mix concepts seen in `source` with
// novel ones. `correlated` drops exactly the novel concepts, so its error
// grows with concept novelty; `independent` corrupts a random number of
// children unrelated to novelty.
struct CorrelationFixture {
  Corpus source;
  Corpus gold;
  Corpus correlated;
  Corpus independent;
};

CorrelationFixture MakeCorrelationFixture(std::uint64_t seed,
                                          std::size_t population = 300);

// AMR text with "# ::id" and "# ::snt" lines, readable by ParseCorpus.
std::string CorpusText(const Corpus& corpus);
void WriteCorpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace crossdom::testing

#endif  // CROSSDOM_TESTS_SUPPORT_FIXTURES_H_
