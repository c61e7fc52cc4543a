#include "crossdom/penman.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <variant>

#include "crossdom/errors.h"

namespace crossdom {

std::string_view ParseErrorKindName(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kEmptyInput:
      return "empty input";
    case ParseErrorKind::kUnbalancedParens:
      return "unbalanced parentheses";
    case ParseErrorKind::kDuplicateVariable:
      return "duplicate variable definition";
    case ParseErrorKind::kUndefinedVariable:
      return "undefined variable reference";
    case ParseErrorKind::kMissingConcept:
      return "missing concept";
    case ParseErrorKind::kUnexpectedToken:
      return "unexpected token";
    case ParseErrorKind::kTrailingInput:
      return "trailing input";
  }
  return "parse error";
}

namespace {

std::string FormatParseError(ParseErrorKind kind, std::size_t line,
                             std::size_t column, const std::string& detail) {
  std::ostringstream out;
  out << "line " << line << ", column " << column << ": "
      << ParseErrorKindName(kind);
  if (!detail.empty()) out << " (" << detail << ")";
  return out.str();
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line,
                       std::size_t column, const std::string& detail)
    : DataError(FormatParseError(kind, line, column, detail)),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(detail) {}

// ---------------------------------------------------------------------------
// AmrGraph

AmrGraph::AmrGraph(std::string root, std::vector<Node> nodes,
                   std::vector<Edge> edges, std::vector<Attribute> attributes)
    : root_(std::move(root)),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      attributes_(std::move(attributes)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i].variable, i).second) {
      throw InvariantError("duplicate variable '" + nodes_[i].variable + "'");
    }
  }
  Validate();
}

void AmrGraph::Validate() const {
  if (nodes_.empty()) throw InvariantError("graph has no nodes");
  if (!HasVariable(root_)) {
    throw InvariantError("root '" + root_ + "' is not a node");
  }
  for (const Node& node : nodes_) {
    if (node.variable.empty()) throw InvariantError("empty variable id");
    if (node.label.empty()) {
      throw InvariantError("empty concept for '" + node.variable + "'");
    }
  }
  for (const Edge& edge : edges_) {
    if (!HasVariable(edge.source) || !HasVariable(edge.target)) {
      throw InvariantError("edge " + edge.source + " :" + edge.role + " " +
                           edge.target + " references an unknown variable");
    }
    if (edge.role.empty()) throw InvariantError("edge with empty role");
  }
  for (const Attribute& attr : attributes_) {
    if (!HasVariable(attr.source)) {
      throw InvariantError("attribute :" + attr.role + " on unknown variable '" +
                           attr.source + "'");
    }
    if (attr.role.empty()) throw InvariantError("attribute with empty role");
  }
}

bool AmrGraph::HasVariable(std::string_view variable) const {
  return index_.find(variable) != index_.end();
}

const std::string* AmrGraph::ConceptOf(std::string_view variable) const {
  auto it = index_.find(variable);
  return it == index_.end() ? nullptr : &nodes_[it->second].label;
}

bool operator==(const AmrGraph& a, const AmrGraph& b) {
  if (a.root_ != b.root_ || a.nodes_.size() != b.nodes_.size() ||
      a.edges_.size() != b.edges_.size() ||
      a.attributes_.size() != b.attributes_.size()) {
    return false;
  }
  for (const Node& node : a.nodes_) {
    const std::string* other = b.ConceptOf(node.variable);
    if (other == nullptr || *other != node.label) return false;
  }
  auto sorted = [](auto items) {
    std::sort(items.begin(), items.end());
    return items;
  };
  return sorted(a.edges_) == sorted(b.edges_) &&
         sorted(a.attributes_) == sorted(b.attributes_);
}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class TokenType { kLParen, kRParen, kSlash, kRole, kString, kSymbol, kEnd };

struct Token {
  TokenType type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsSymbolChar(char c) {
  return !IsSpace(c) && c != '(' && c != ')' && c != '/' && c != ':' &&
         c != '~' && c != '"';
}

bool IsRoleChar(char c) {
  return !IsSpace(c) && c != '(' && c != ')' && c != '~' && c != '"';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Tokenize() {
    std::vector<Token> tokens;
    while (true) {
      SkipSpaceAndAlignments();
      if (pos_ >= text_.size()) {
        tokens.push_back({TokenType::kEnd, "", line_, column_});
        return tokens;
      }
      const std::size_t line = line_;
      const std::size_t column = column_;
      const char c = text_[pos_];
      if (c == '(') {
        Advance();
        tokens.push_back({TokenType::kLParen, "(", line, column});
      } else if (c == ')') {
        Advance();
        tokens.push_back({TokenType::kRParen, ")", line, column});
      } else if (c == '/') {
        Advance();
        tokens.push_back({TokenType::kSlash, "/", line, column});
      } else if (c == ':') {
        Advance();
        std::string role;
        while (pos_ < text_.size() && IsRoleChar(text_[pos_])) {
          role.push_back(text_[pos_]);
          Advance();
        }
        tokens.push_back({TokenType::kRole, std::move(role), line, column});
      } else if (c == '"') {
        tokens.push_back({TokenType::kString, ReadString(line, column), line,
                          column});
      } else {
        std::string symbol;
        while (pos_ < text_.size() && IsSymbolChar(text_[pos_])) {
          symbol.push_back(text_[pos_]);
          Advance();
        }
        if (symbol.empty()) {
          throw ParseError(ParseErrorKind::kUnexpectedToken, line, column,
                           std::string("stray '") + c + "'");
        }
        tokens.push_back({TokenType::kSymbol, std::move(symbol), line, column});
      }
    }
  }

 private:
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  // Token alignments: "~e.12", "~12", "~e.3,4".
  bool AtAlignment() const {
    if (pos_ >= text_.size() || text_[pos_] != '~') return false;
    std::size_t p = pos_ + 1;
    if (p < text_.size() && std::isalpha(static_cast<unsigned char>(text_[p]))) {
      ++p;
      if (p < text_.size() && text_[p] == '.') ++p;
    }
    return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
  }

  void SkipSpaceAndAlignments() {
    while (pos_ < text_.size()) {
      if (IsSpace(text_[pos_])) {
        Advance();
      } else if (AtAlignment()) {
        Advance();
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                text_[pos_] == '.' || text_[pos_] == ',')) {
          Advance();
        }
      } else {
        return;
      }
    }
  }

  std::string ReadString(std::size_t line, std::size_t column) {
    Advance();  // opening quote
    std::string value;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        Advance();
        value.push_back(text_[pos_]);
        Advance();
      } else if (c == '"') {
        Advance();
        return value;
      } else {
        value.push_back(c);
        Advance();
      }
    }
    throw ParseError(ParseErrorKind::kUnexpectedToken, line, column,
                     "unterminated string literal");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// AMR variables are a lowercase letter optionally followed by digits (b, x12).
bool LooksLikeVariable(std::string_view s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

// ---------------------------------------------------------------------------
// Parser

// A role whose value was a bare symbol. Whether it names a variable is only
// known once the whole graph has been read.
struct PendingAtom {
  std::string source;
  std::string role;
  std::string text;
  std::size_t line;
  std::size_t column;
};

using Relation = std::variant<Edge, Attribute, PendingAtom>;

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  AmrGraph Parse() {
    if (Peek().type == TokenType::kEnd) {
      throw ParseError(ParseErrorKind::kEmptyInput, Peek().line, Peek().column,
                       "");
    }
    if (Peek().type != TokenType::kLParen) {
      Fail(ParseErrorKind::kUnexpectedToken, Peek(), "expected '('");
    }
    std::string root = ParseNode();
    const Token& rest = Peek();
    if (rest.type == TokenType::kRParen) {
      Fail(ParseErrorKind::kUnbalancedParens, rest, "unmatched ')'");
    }
    if (rest.type != TokenType::kEnd) {
      Fail(ParseErrorKind::kTrailingInput, rest, "'" + rest.text + "'");
    }

    std::vector<Edge> edges;
    std::vector<Attribute> attributes;
    for (Relation& relation : relations_) {
      if (auto* edge = std::get_if<Edge>(&relation)) {
        edges.push_back(std::move(*edge));
      } else if (auto* attr = std::get_if<Attribute>(&relation)) {
        attributes.push_back(std::move(*attr));
      } else {
        auto& atom = std::get<PendingAtom>(relation);
        if (defined_.count(atom.text) > 0) {
          edges.push_back({atom.source, atom.role, atom.text});
        } else if (LooksLikeVariable(atom.text)) {
          throw ParseError(ParseErrorKind::kUndefinedVariable, atom.line,
                           atom.column, "'" + atom.text + "'");
        } else {
          attributes.push_back({atom.source, atom.role, atom.text, false});
        }
      }
    }
    return AmrGraph(std::move(root), std::move(nodes_), std::move(edges),
                    std::move(attributes));
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void Fail(ParseErrorKind kind, const Token& token,
                         const std::string& detail) {
    throw ParseError(kind, token.line, token.column, detail);
  }

  void ExpectCloseOrFail() {
    const Token& token = Peek();
    if (token.type == TokenType::kEnd) {
      Fail(ParseErrorKind::kUnbalancedParens, token, "missing ')'");
    }
    if (token.type != TokenType::kRParen) {
      Fail(ParseErrorKind::kUnexpectedToken, token,
           "expected ')' or a role, got '" + token.text + "'");
    }
    Next();
  }

  std::string ParseNode() {
    const Token& open = Next();  // '('
    const Token& var = Next();
    if (var.type == TokenType::kEnd) {
      Fail(ParseErrorKind::kUnbalancedParens, var, "missing ')'");
    }
    if (var.type != TokenType::kSymbol) {
      Fail(ParseErrorKind::kUnexpectedToken, var,
           "expected a variable after '(' at column " +
               std::to_string(open.column));
    }
    std::string variable = var.text;
    if (Peek().type != TokenType::kSlash) {
      Fail(ParseErrorKind::kMissingConcept, var, "variable '" + variable + "'");
    }
    Next();
    const Token& label = Next();
    if (label.type == TokenType::kEnd) {
      Fail(ParseErrorKind::kUnbalancedParens, label, "missing ')'");
    }
    if ((label.type != TokenType::kSymbol &&
         label.type != TokenType::kString) ||
        label.text.empty()) {
      Fail(ParseErrorKind::kMissingConcept, label,
           "variable '" + variable + "'");
    }
    if (!defined_.insert(variable).second) {
      Fail(ParseErrorKind::kDuplicateVariable, var, "'" + variable + "'");
    }
    nodes_.push_back({variable, label.text});

    while (Peek().type == TokenType::kRole) {
      const Token& role = Next();
      if (role.text.empty()) {
        Fail(ParseErrorKind::kUnexpectedToken, role, "empty role");
      }
      const Token& value = Peek();
      switch (value.type) {
        case TokenType::kLParen: {
          // Reserve the slot so edges keep document order.
          const std::size_t slot = relations_.size();
          relations_.emplace_back(Edge{variable, role.text, ""});
          std::get<Edge>(relations_[slot]).target = ParseNode();
          break;
        }
        case TokenType::kString:
          Next();
          relations_.emplace_back(
              Attribute{variable, role.text, value.text, true});
          break;
        case TokenType::kSymbol:
          Next();
          relations_.emplace_back(PendingAtom{variable, role.text, value.text,
                                              value.line, value.column});
          break;
        case TokenType::kEnd:
          Fail(ParseErrorKind::kUnbalancedParens, value, "missing ')'");
        default:
          Fail(ParseErrorKind::kUnexpectedToken, value,
               "role :" + role.text + " has no value");
      }
    }
    ExpectCloseOrFail();
    return variable;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Node> nodes_;
  std::vector<Relation> relations_;
  std::set<std::string, std::less<>> defined_;
};

// ---------------------------------------------------------------------------
// Serializer

bool IsPlainSymbol(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), IsSymbolChar);
}

void AppendQuoted(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
}

class Serializer {
 public:
  explicit Serializer(const AmrGraph& graph) : graph_(graph) {}

  std::string Run() {
    Visit(graph_.root());
    if (visited_.size() != graph_.nodes().size()) {
      for (const Node& node : graph_.nodes()) {
        if (visited_.count(node.variable) == 0) {
          throw InvariantError("node '" + node.variable +
                               "' is not reachable from the root");
        }
      }
    }
    return std::move(out_);
  }

 private:
  void Visit(const std::string& variable) {
    visited_.insert(variable);
    const std::string& label = *graph_.ConceptOf(variable);
    out_ += "(";
    out_ += variable;
    out_ += " / ";
    if (IsPlainSymbol(label)) {
      out_ += label;
    } else {
      AppendQuoted(out_, label);
    }
    for (const Attribute& attr : graph_.attributes()) {
      if (attr.source != variable) continue;
      CheckRole(attr.role);
      out_ += " :";
      out_ += attr.role;
      out_ += " ";
      if (attr.quoted) {
        AppendQuoted(out_, attr.value);
      } else {
        if (!IsPlainSymbol(attr.value) || graph_.HasVariable(attr.value) ||
            LooksLikeVariable(attr.value)) {
          throw InvariantError("unquoted constant '" + attr.value +
                               "' cannot be written as a PENMAN symbol");
        }
        out_ += attr.value;
      }
    }
    for (const Edge& edge : graph_.edges()) {
      if (edge.source != variable) continue;
      CheckRole(edge.role);
      out_ += " :";
      out_ += edge.role;
      out_ += " ";
      if (visited_.count(edge.target) > 0) {
        out_ += edge.target;
      } else {
        Visit(edge.target);
      }
    }
    out_ += ")";
  }

  static void CheckRole(const std::string& role) {
    if (role.empty() || !std::all_of(role.begin(), role.end(), IsRoleChar)) {
      throw InvariantError("role '" + role + "' cannot be written in PENMAN");
    }
  }

  const AmrGraph& graph_;
  std::set<std::string, std::less<>> visited_;
  std::string out_;
};

}  // namespace

AmrGraph ParseGraph(std::string_view text) {
  return Parser(Lexer(text).Tokenize()).Parse();
}

std::string SerializeGraph(const AmrGraph& graph) {
  if (graph.empty()) throw InvariantError("graph has no nodes");
  return Serializer(graph).Run();
}

// ---------------------------------------------------------------------------
// Corpus files

namespace {

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), IsSpace);
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

// Finds the next "::key" marker at or after `from` that starts the line or
// follows whitespace.
std::size_t FindMarker(std::string_view s, std::size_t from) {
  while (true) {
    std::size_t pos = s.find("::", from);
    if (pos == std::string_view::npos) return pos;
    if (pos == 0 || IsSpace(s[pos - 1])) return pos;
    from = pos + 2;
  }
}

// "# ::id a ::date b" carries several keys; ::snt and ::tok take the rest of
// the line verbatim.
void ParseMetadata(std::string_view body,
                   std::vector<std::pair<std::string, std::string>>& out) {
  std::size_t pos = FindMarker(body, 0);
  while (pos != std::string_view::npos) {
    std::size_t key_end = pos + 2;
    while (key_end < body.size() && !IsSpace(body[key_end])) ++key_end;
    std::string key(body.substr(pos + 2, key_end - pos - 2));
    std::size_t next = (key == "snt" || key == "tok")
                           ? std::string_view::npos
                           : FindMarker(body, key_end);
    std::string_view value = body.substr(
        key_end, next == std::string_view::npos ? std::string_view::npos
                                                : next - key_end);
    if (!key.empty()) out.emplace_back(std::move(key), std::string(Trim(value)));
    pos = next;
  }
}

std::vector<std::string> SplitOnSpaces(std::string_view s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(' ', start);
    if (end == std::string_view::npos) end = s.size();
    if (end > start) parts.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

struct Block {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::string graph_text;
  std::vector<std::size_t> graph_lines;  // file line of each graph_text line
};

}  // namespace

Corpus ParseCorpus(std::string_view text, std::string name,
                   const ReadOptions& options, ReadStats* stats) {
  Corpus corpus;
  corpus.name = std::move(name);

  std::vector<Block> blocks;
  Block current;
  bool in_block = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  auto flush = [&] {
    if (in_block) blocks.push_back(std::move(current));
    current = Block{};
    in_block = false;
  };
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (IsBlank(line)) {
      flush();
    } else {
      in_block = true;
      std::string_view trimmed = Trim(line);
      if (trimmed.front() == '#') {
        ParseMetadata(trimmed.substr(1), current.metadata);
      } else {
        if (!current.graph_text.empty()) current.graph_text.push_back('\n');
        current.graph_text.append(line);
        current.graph_lines.push_back(line_no);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  flush();

  std::size_t index = 0;
  for (Block& block : blocks) {
    if (block.graph_lines.empty()) continue;
    CorpusEntry entry;
    for (auto& [key, value] : block.metadata) {
      if (key == "id") {
        entry.id = value;
      } else if (key == "snt") {
        entry.snt = value;
      } else if (key == "tok") {
        entry.tok = SplitOnSpaces(value);
      } else {
        entry.extra[key] = value;
      }
    }
    try {
      entry.graph = ParseGraph(block.graph_text);
      corpus.entries.push_back(std::move(entry));
    } catch (const ParseError& e) {
      const std::size_t file_line =
          e.line() >= 1 && e.line() <= block.graph_lines.size()
              ? block.graph_lines[e.line() - 1]
              : block.graph_lines.back();
      std::ostringstream message;
      message << corpus.name << ": entry index " << index;
      if (entry.id) message << " (id " << *entry.id << ")";
      message << ": line " << file_line << ", column " << e.column() << ": "
              << ParseErrorKindName(e.kind());
      if (!e.detail().empty()) message << " (" << e.detail() << ")";
      if (options.strict) {
        throw CorpusEntryError(index, entry.id.value_or(""), message.str());
      }
      if (stats != nullptr) {
        stats->skipped.push_back({index, entry.id, message.str()});
      }
    } catch (const InvariantError& e) {
      std::ostringstream message;
      message << corpus.name << ": entry index " << index << ": " << e.what();
      if (options.strict) {
        throw CorpusEntryError(index, entry.id.value_or(""), message.str());
      }
      if (stats != nullptr) {
        stats->skipped.push_back({index, entry.id, message.str()});
      }
    }
    ++index;
  }
  return corpus;
}

Corpus ReadCorpus(const std::filesystem::path& path, const ReadOptions& options,
                  ReadStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw DataError("error reading '" + path.string() + "'");
  return ParseCorpus(buffer.str(), path.string(), options, stats);
}

}  // namespace crossdom
