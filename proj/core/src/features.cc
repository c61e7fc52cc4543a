#include "crossdom/features.h"

#include <algorithm>
#include <stdexcept>

#include "crossdom/errors.h"

namespace crossdom {

std::string_view FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLength: return "length";
    case FeatureKind::kUnigram: return "unigram";
    case FeatureKind::kBigram: return "bigram";
    case FeatureKind::kTrigram: return "trigram";
    case FeatureKind::kConcept: return "concept";
    case FeatureKind::kRelation: return "relation";
    case FeatureKind::kTriplet: return "triplet";
  }
  return "unknown";
}

std::string_view FeatureKindHeading(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kLength: return "Avg. Len";
    case FeatureKind::kUnigram: return "Unigram";
    case FeatureKind::kBigram: return "Bigram";
    case FeatureKind::kTrigram: return "Trigram";
    case FeatureKind::kConcept: return "Concept";
    case FeatureKind::kRelation: return "Relation";
    case FeatureKind::kTriplet: return "Triplet";
  }
  return "?";
}

std::optional<FeatureKind> ParseFeatureKind(std::string_view name) {
  for (FeatureKind kind : kAllFeatureKinds) {
    if (FeatureKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

bool IsTextFeature(FeatureKind kind) {
  return kind == FeatureKind::kLength || kind == FeatureKind::kUnigram ||
         kind == FeatureKind::kBigram || kind == FeatureKind::kTrigram;
}

void FeatureDistribution::Add(std::string_view value, std::size_t count) {
  if (count == 0) return;
  auto it = counts_.find(value);
  if (it == counts_.end()) {
    counts_.emplace(std::string(value), count);
  } else {
    it->second += count;
  }
  total_ += count;
}

void FeatureDistribution::Merge(const FeatureDistribution& other) {
  if (other.kind_ != kind_) {
    throw std::invalid_argument("cannot merge distributions of different kinds");
  }
  for (const auto& [value, count] : other.counts_) Add(value, count);
}

std::size_t FeatureDistribution::Count(std::string_view value) const {
  auto it = counts_.find(value);
  return it == counts_.end() ? 0 : it->second;
}

double FeatureDistribution::Probability(std::string_view value) const {
  return total_ == 0 ? 0.0 : static_cast<double>(Count(value)) / total_;
}

namespace {

// Byte length of the whitespace character starting at s[i], or 0. Covers
// ASCII whitespace and the UTF-8 encoded Unicode space separators.
std::size_t WhitespaceAt(std::string_view s, std::size_t i) {
  const auto byte = [&](std::size_t k) {
    return k < s.size() ? static_cast<unsigned char>(s[k]) : 0u;
  };
  const unsigned c = byte(i);
  if (c == ' ' || (c >= '\t' && c <= '\r')) return 1;
  if (c == 0xC2 && (byte(i + 1) == 0x85 || byte(i + 1) == 0xA0)) return 2;
  if (c == 0xE1 && byte(i + 1) == 0x9A && byte(i + 2) == 0x80) return 3;
  if (c == 0xE2 && byte(i + 1) == 0x80) {
    const unsigned d = byte(i + 2);
    if ((d >= 0x80 && d <= 0x8A) || d == 0xA8 || d == 0xA9 || d == 0xAF) {
      return 3;
    }
  }
  if (c == 0xE2 && byte(i + 1) == 0x81 && byte(i + 2) == 0x9F) return 3;
  if (c == 0xE3 && byte(i + 1) == 0x80 && byte(i + 2) == 0x80) return 3;
  return 0;
}

bool IsTerminalPunct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':';
}

void AddToken(std::string_view token, bool split_punctuation,
              std::vector<std::string>& out) {
  if (token.empty()) return;
  if (split_punctuation) {
    std::size_t cut = token.size();
    while (cut > 0 && IsTerminalPunct(token[cut - 1])) --cut;
    if (cut > 0 && cut < token.size()) {
      out.emplace_back(token.substr(0, cut));
      out.emplace_back(token.substr(cut));
      return;
    }
  }
  out.emplace_back(token);
}

std::string AsciiLower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

std::size_t NgramOrder(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kUnigram: return 1;
    case FeatureKind::kBigram: return 2;
    case FeatureKind::kTrigram: return 3;
    default: return 0;
  }
}

}  // namespace

std::vector<std::string> Tokenize(const CorpusEntry& entry,
                                  const FeatureOptions& options) {
  std::vector<std::string> tokens;
  if (entry.tok) {
    tokens = *entry.tok;
  } else if (entry.snt) {
    const std::string_view s = *entry.snt;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < s.size()) {
      if (const std::size_t w = WhitespaceAt(s, i); w > 0) {
        AddToken(s.substr(start, i - start), options.split_punctuation, tokens);
        i += w;
        start = i;
      } else {
        ++i;
      }
    }
    AddToken(s.substr(start), options.split_punctuation, tokens);
  } else {
    throw DataError("entry " + entry.id.value_or("<no id>") +
                    " has neither ::snt nor ::tok; text features need one");
  }
  if (options.lowercase) {
    for (std::string& token : tokens) token = AsciiLower(std::move(token));
  }
  return tokens;
}

FeatureDistribution ExtractEntry(const CorpusEntry& entry, FeatureKind kind,
                                 const FeatureOptions& options) {
  FeatureDistribution dist(kind);
  if (kind == FeatureKind::kLength) {
    throw std::invalid_argument(
        "length is summarized by AverageLength, not a distribution");
  }
  if (const std::size_t n = NgramOrder(kind); n > 0) {
    std::vector<std::string> tokens = Tokenize(entry, options);
    if (options.pad_ngrams && n > 1) {
      tokens.insert(tokens.begin(), n - 1, "<s>");
      tokens.insert(tokens.end(), n - 1, "</s>");
    }
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t k = 1; k < n; ++k) {
        gram += kItemSeparator;
        gram += tokens[i + k];
      }
      dist.Add(gram);
    }
    return dist;
  }

  const TripleSet triples = ToTriples(entry.graph, options.triples);
  std::map<std::string_view, std::string_view> concepts;
  for (const Triple& t : triples.triples) {
    if (t.kind == TripleKind::kInstance) concepts.emplace(t.first, t.second);
  }
  for (const Triple& t : triples.triples) {
    switch (kind) {
      case FeatureKind::kConcept:
        if (t.kind == TripleKind::kInstance) {
          dist.Add(options.keep_senses ? t.second : StripSense(t.second));
        }
        break;
      case FeatureKind::kRelation:
        if (t.kind == TripleKind::kRelation) dist.Add(t.relation);
        break;
      case FeatureKind::kTriplet:
        if (t.kind == TripleKind::kRelation) {
          std::string triplet(concepts.at(t.first));
          triplet += kItemSeparator;
          triplet += t.relation;
          triplet += kItemSeparator;
          triplet += concepts.at(t.second);
          dist.Add(triplet);
        }
        break;
      default:
        break;
    }
  }
  return dist;
}

FeatureDistribution Extract(const Corpus& corpus, FeatureKind kind,
                            const FeatureOptions& options) {
  FeatureDistribution dist(kind);
  for (const CorpusEntry& entry : corpus.entries) {
    dist.Merge(ExtractEntry(entry, kind, options));
  }
  return dist;
}

double AverageLength(const Corpus& corpus, const FeatureOptions& options) {
  if (corpus.empty()) {
    throw DataError("average length of an empty corpus is undefined");
  }
  std::size_t tokens = 0;
  for (const CorpusEntry& entry : corpus.entries) {
    tokens += Tokenize(entry, options).size();
  }
  return static_cast<double>(tokens) / corpus.size();
}

}  // namespace crossdom
