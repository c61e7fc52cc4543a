#ifndef CROSSDOM_PENMAN_H_
#define CROSSDOM_PENMAN_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crossdom {

struct Node {
  std::string variable;
  std::string label;  // concept

  friend bool operator==(const Node&, const Node&) = default;
};

// Role labels are stored without the leading colon and exactly as written,
// so inverse roles keep their "-of" suffix.
struct Edge {
  std::string source;
  std::string role;
  std::string target;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A constant attached to a variable. `value` holds the unquoted text;
// `quoted` records whether the source wrote it as a string literal.
struct Attribute {
  std::string source;
  std::string role;
  std::string value;
  bool quoted = false;

  friend auto operator<=>(const Attribute&, const Attribute&) = default;
};

// Rooted, directed, labeled AMR graph. Nodes keep definition order; edges
// and attributes keep the order in which they were written.
class AmrGraph {
 public:
  AmrGraph() = default;

  // Builds a graph and checks the invariants; throws InvariantError.
  AmrGraph(std::string root, std::vector<Node> nodes, std::vector<Edge> edges,
           std::vector<Attribute> attributes);

  const std::string& root() const { return root_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Attribute>& attributes() const { return attributes_; }

  bool HasVariable(std::string_view variable) const;
  // Concept bound to `variable`, or nullptr.
  const std::string* ConceptOf(std::string_view variable) const;

  bool empty() const { return nodes_.empty(); }

  // Equality ignores node, edge and attribute order.
  friend bool operator==(const AmrGraph& a, const AmrGraph& b);

 private:
  void Validate() const;

  std::string root_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<Attribute> attributes_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Parses one parenthesized PENMAN expression. Token alignments such as
// "~e.3" are discarded. Throws ParseError.
AmrGraph ParseGraph(std::string_view text);

// Single-line PENMAN rendering. Re-entrant variables are written in full on
// their first visit in a depth-first walk from the root and as bare
// variables afterwards. Throws InvariantError when some node cannot be
// reached from the root.
std::string SerializeGraph(const AmrGraph& graph);

struct CorpusEntry {
  std::optional<std::string> id;
  std::optional<std::string> snt;
  std::optional<std::vector<std::string>> tok;
  // Metadata keys other than id, snt and tok.
  std::map<std::string, std::string> extra;
  AmrGraph graph;
};

struct Corpus {
  std::string name;
  std::vector<CorpusEntry> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

struct ReadOptions {
  // Abort on the first malformed graph; otherwise skip it and record it.
  bool strict = true;
};

struct SkippedEntry {
  std::size_t index = 0;  // 0-based block index among graph-bearing blocks
  std::optional<std::string> id;
  std::string message;
};

struct ReadStats {
  std::vector<SkippedEntry> skipped;
};

// Reads a corpus in the released AMR layout: blank-line separated blocks,
// "# ::key value" metadata lines, the remaining lines forming one graph.
// Blocks that carry no graph (for example a file header comment) are
// ignored. Throws DataError for unreadable files and, in strict mode, for
// the first malformed graph.
Corpus ParseCorpus(std::string_view text, std::string name,
                   const ReadOptions& options = {}, ReadStats* stats = nullptr);
Corpus ReadCorpus(const std::filesystem::path& path,
                  const ReadOptions& options = {}, ReadStats* stats = nullptr);

}  // namespace crossdom

#endif  // CROSSDOM_PENMAN_H_
