#ifndef CROSSDOM_FEATURES_H_
#define CROSSDOM_FEATURES_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crossdom/penman.h"
#include "crossdom/triples.h"

namespace crossdom {

enum class FeatureKind {
  kLength,
  kUnigram,
  kBigram,
  kTrigram,
  kConcept,
  kRelation,
  kTriplet,
};

inline constexpr std::array<FeatureKind, 7> kAllFeatureKinds = {
    FeatureKind::kLength,  FeatureKind::kUnigram,  FeatureKind::kBigram,
    FeatureKind::kTrigram, FeatureKind::kConcept,  FeatureKind::kRelation,
    FeatureKind::kTriplet,
};

std::string_view FeatureKindName(FeatureKind kind);     // "unigram"
std::string_view FeatureKindHeading(FeatureKind kind);  // "Unigram"
std::optional<FeatureKind> ParseFeatureKind(std::string_view name);
bool IsTextFeature(FeatureKind kind);

// Count table over feature values. Every stored count is positive and
// total() is their sum.
class FeatureDistribution {
 public:
  using Counts = std::map<std::string, std::size_t, std::less<>>;

  explicit FeatureDistribution(FeatureKind kind) : kind_(kind) {}

  void Add(std::string_view value, std::size_t count = 1);
  void Merge(const FeatureDistribution& other);

  FeatureKind kind() const { return kind_; }
  const Counts& counts() const { return counts_; }
  std::size_t total() const { return total_; }
  bool empty() const { return total_ == 0; }

  std::size_t Count(std::string_view value) const;
  bool Contains(std::string_view value) const { return Count(value) > 0; }
  double Probability(std::string_view value) const;

  friend bool operator==(const FeatureDistribution&,
                         const FeatureDistribution&) = default;

 private:
  FeatureKind kind_;
  Counts counts_;
  std::size_t total_ = 0;
};

struct FeatureOptions {
  bool lowercase = true;
  // Split trailing punctuation ("go." -> "go", ".") when tokenizing ::snt.
  bool split_punctuation = true;
  // Surround each sentence with n-1 "<s>" / "</s>" markers for n-grams.
  bool pad_ngrams = false;
  bool keep_senses = true;
  TripleOptions triples;
};

// Tokens of an entry: ::tok verbatim when present, otherwise ::snt split on
// Unicode whitespace. Throws DataError when the entry has neither.
std::vector<std::string> Tokenize(const CorpusEntry& entry,
                                  const FeatureOptions& options = {});

// Throws std::invalid_argument for kLength.
FeatureDistribution ExtractEntry(const CorpusEntry& entry, FeatureKind kind,
                                 const FeatureOptions& options = {});
FeatureDistribution Extract(const Corpus& corpus, FeatureKind kind,
                            const FeatureOptions& options = {});

// Mean token count per entry. Throws DataError for an empty corpus.
double AverageLength(const Corpus& corpus, const FeatureOptions& options = {});

}  // namespace crossdom

#endif  // CROSSDOM_FEATURES_H_
