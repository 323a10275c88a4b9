#include "slicecount/formula.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "slicecount/errors.hpp"

namespace slicecount {

namespace fml {

namespace {
std::shared_ptr<Formula> node(FormulaKind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}
}  // namespace

FormulaPtr truth() { return node(FormulaKind::True); }
FormulaPtr falsity() { return node(FormulaKind::False); }

FormulaPtr negate(FormulaPtr f) {
  auto n = node(FormulaKind::Not);
  n->children.push_back(std::move(f));
  return n;
}

FormulaPtr conj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return truth();
  if (fs.size() == 1) return fs.front();
  auto n = node(FormulaKind::And);
  n->children = std::move(fs);
  return n;
}

FormulaPtr disj(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return falsity();
  if (fs.size() == 1) return fs.front();
  auto n = node(FormulaKind::Or);
  n->children = std::move(fs);
  return n;
}

FormulaPtr exists(std::string var, FormulaPtr body) {
  auto n = node(FormulaKind::Exists);
  n->vars.push_back(std::move(var));
  n->children.push_back(std::move(body));
  return n;
}

FormulaPtr forall(std::string var, FormulaPtr body) {
  return negate(exists(std::move(var), negate(std::move(body))));
}

FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return disj({negate(std::move(a)), std::move(b)}); }

FormulaPtr atom(AtomKind kind, std::vector<std::string> vars, std::string symbol) {
  if (vars.size() != atomArity(kind)) throw InvalidArgument(std::string("wrong arity for ") + atomName(kind));
  auto n = node(FormulaKind::Atom);
  n->atom = kind;
  n->vars = std::move(vars);
  n->symbol = std::move(symbol);
  return n;
}

FormulaPtr macro(MacroKind kind, std::vector<std::string> vars, int parameter) {
  if (vars.size() != macroArity(kind))
    throw InvalidArgument(std::string("wrong arity for ") + macroName(kind));
  auto n = node(FormulaKind::Macro);
  n->macro = kind;
  n->vars = std::move(vars);
  n->parameter = parameter;
  return n;
}

}  // namespace fml

const char* atomName(AtomKind kind) {
  switch (kind) {
    case AtomKind::Vertices: return "V";
    case AtomKind::Edges: return "E";
    case AtomKind::Singleton: return "singleton";
    case AtomKind::Subset: return "subset";
    case AtomKind::Source: return "src";
    case AtomKind::Target: return "tgt";
    case AtomKind::VertexLabel: return "vlabel";
    case AtomKind::EdgeLabel: return "elabel";
    case AtomKind::Frontier: return "frontier";
    case AtomKind::SameFrontier: return "same-frontier";
    case AtomKind::ConsecutiveFrontiers: return "consecutive-frontiers";
  }
  return "?";
}

const char* macroName(MacroKind kind) {
  switch (kind) {
    case MacroKind::Path: return "path";
    case MacroKind::PathVertices: return "path-vertices";
    case MacroKind::PathEdges: return "path-edges";
    case MacroKind::ZigZag: return "zigzag";
    case MacroKind::Unitable: return "unitable";
    case MacroKind::HamiltonianCycle: return "hamiltonian-cycle";
    case MacroKind::Connected: return "connected";
    case MacroKind::Forest: return "forest";
    case MacroKind::Bipartite: return "bipartite";
  }
  return "?";
}

std::size_t atomArity(AtomKind kind) {
  switch (kind) {
    case AtomKind::Vertices:
    case AtomKind::Edges:
    case AtomKind::Singleton:
    case AtomKind::VertexLabel:
    case AtomKind::EdgeLabel:
    case AtomKind::Frontier:
      return 1;
    default:
      return 2;
  }
}

std::size_t macroArity(MacroKind kind) {
  switch (kind) {
    case MacroKind::Path: return 2;
    case MacroKind::PathVertices:
    case MacroKind::PathEdges:
      return 1;
    default:
      return 0;
  }
}

namespace {

bool macroHasParameter(MacroKind kind) { return kind == MacroKind::ZigZag || kind == MacroKind::Unitable; }

const std::map<std::string, AtomKind>& atomTable() {
  static const std::map<std::string, AtomKind> table = {
      {"V", AtomKind::Vertices},
      {"E", AtomKind::Edges},
      {"singleton", AtomKind::Singleton},
      {"subset", AtomKind::Subset},
      {"src", AtomKind::Source},
      {"tgt", AtomKind::Target},
      {"vlabel", AtomKind::VertexLabel},
      {"elabel", AtomKind::EdgeLabel},
      {"frontier", AtomKind::Frontier},
      {"same-frontier", AtomKind::SameFrontier},
      {"consecutive-frontiers", AtomKind::ConsecutiveFrontiers},
  };
  return table;
}

const std::map<std::string, MacroKind>& macroTable() {
  static const std::map<std::string, MacroKind> table = {
      {"path", MacroKind::Path},
      {"path-vertices", MacroKind::PathVertices},
      {"path-edges", MacroKind::PathEdges},
      {"zigzag", MacroKind::ZigZag},
      {"unitable", MacroKind::Unitable},
      {"hamiltonian-cycle", MacroKind::HamiltonianCycle},
      {"connected", MacroKind::Connected},
      {"forest", MacroKind::Forest},
      {"bipartite", MacroKind::Bipartite},
  };
  return table;
}

struct Token {
  enum Type { Open, Close, Word, End } type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skipSpace();
    if (pos_ >= text_.size()) return {Token::End, "", line_, column_};
    char c = text_[pos_];
    Token t{Token::Word, "", line_, column_};
    if (c == '(' || c == ')') {
      t.type = c == '(' ? Token::Open : Token::Close;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      t.text += text_[pos_];
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skipSpace() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool isIdentifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& freeVars) : lexer_(text) {
    for (const auto& v : freeVars) {
      if (!isIdentifier(v)) throw InvalidArgument("bad free variable name " + v);
      scope_[v].push_back(v);
      used_.insert(v);
    }
    lookahead_ = lexer_.next();
  }

  FormulaPtr parseSentence() {
    auto f = parseForm();
    if (lookahead_.type != Token::End) fail("trailing input after formula", lookahead_);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what, const Token& at) {
    throw ParseError(what, at.line, at.column);
  }

  Token take() {
    Token t = lookahead_;
    lookahead_ = lexer_.next();
    return t;
  }

  Token expect(Token::Type type, const char* what) {
    if (lookahead_.type != type) fail(std::string("expected ") + what, lookahead_);
    return take();
  }

  std::string bindName(const std::string& base) {
    std::string name = base;
    for (int i = 1; used_.count(name); ++i) name = base + "_" + std::to_string(i);
    used_.insert(name);
    return name;
  }

  std::string resolve(const Token& t) {
    if (!isIdentifier(t.text)) fail("expected variable name, got '" + t.text + "'", t);
    auto it = scope_.find(t.text);
    if (it == scope_.end() || it->second.empty()) fail("unbound variable " + t.text, t);
    return it->second.back();
  }

  int parseInteger(const Token& t) {
    if (t.type != Token::Word || t.text.empty() || t.text.size() > 6) fail("expected integer", t);
    for (char c : t.text)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected integer, got '" + t.text + "'", t);
    return std::stoi(t.text);
  }

  FormulaPtr parseForm() {
    Token t = take();
    if (t.type == Token::Word) {
      if (t.text == "true") return fml::truth();
      if (t.text == "false") return fml::falsity();
      fail("unexpected word '" + t.text + "'", t);
    }
    if (t.type != Token::Open) fail(t.type == Token::End ? "unexpected end of input" : "unexpected ')'", t);
    Token head = expect(Token::Word, "operator");
    const std::string& op = head.text;
    FormulaPtr result;
    if (op == "true" || op == "false") {
      result = op == "true" ? fml::truth() : fml::falsity();
    } else if (op == "not") {
      result = fml::negate(parseForm());
    } else if (op == "and" || op == "or") {
      std::vector<FormulaPtr> parts;
      while (lookahead_.type != Token::Close && lookahead_.type != Token::End) parts.push_back(parseForm());
      result = op == "and" ? fml::conj(std::move(parts)) : fml::disj(std::move(parts));
    } else if (op == "implies") {
      auto a = parseForm();
      auto b = parseForm();
      result = fml::implies(a, b);
    } else if (op == "exists" || op == "forall") {
      result = parseQuantifier(op == "exists", head);
      return result;  // parseQuantifier consumes ')'
    } else if (auto a = atomTable().find(op); a != atomTable().end()) {
      std::vector<std::string> vars;
      std::string symbol;
      if (a->second == AtomKind::VertexLabel || a->second == AtomKind::EdgeLabel) {
        vars.push_back(resolve(expect(Token::Word, "variable")));
        symbol = expect(Token::Word, "label").text;
      } else {
        for (std::size_t i = 0; i < atomArity(a->second); ++i)
          vars.push_back(resolve(expect(Token::Word, "variable")));
      }
      result = fml::atom(a->second, std::move(vars), std::move(symbol));
    } else if (auto m = macroTable().find(op); m != macroTable().end()) {
      std::vector<std::string> vars;
      int parameter = 0;
      if (macroHasParameter(m->second)) {
        Token p = expect(Token::Word, "integer parameter");
        parameter = parseInteger(p);
        if (parameter < 1) fail("macro parameter must be positive", p);
      }
      for (std::size_t i = 0; i < macroArity(m->second); ++i)
        vars.push_back(resolve(expect(Token::Word, "variable")));
      result = fml::macro(m->second, std::move(vars), parameter);
    } else {
      fail("unknown operator '" + op + "'", head);
    }
    expect(Token::Close, "')'");
    return result;
  }

  // After "(exists": one or more variables, then the body, then ')'.
  FormulaPtr parseQuantifier(bool existential, const Token& head) {
    std::vector<std::pair<std::string, std::string>> bound;  // source name, bound name
    while (lookahead_.type == Token::Word) {
      Token v = take();
      if (!isIdentifier(v.text)) fail("bad variable name '" + v.text + "'", v);
      bound.emplace_back(v.text, bindName(v.text));
    }
    if (bound.empty()) fail("quantifier needs a variable", head);
    for (const auto& [name, fresh] : bound) scope_[name].push_back(fresh);
    auto body = parseForm();
    for (const auto& [name, fresh] : bound) scope_[name].pop_back();
    expect(Token::Close, "')'");
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      body = existential ? fml::exists(it->second, body) : fml::forall(it->second, body);
    return body;
  }

  Lexer lexer_;
  Token lookahead_{Token::End, "", 0, 0};
  std::map<std::string, std::vector<std::string>> scope_;
  std::set<std::string> used_;
};

void collectNames(const FormulaPtr& f, std::set<std::string>& out) {
  for (const auto& v : f->vars) out.insert(v);
  for (const auto& c : f->children) collectNames(c, out);
}

void collectFree(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f->kind == FormulaKind::Exists) {
    bool fresh = bound.insert(f->vars[0]).second;
    collectFree(f->children[0], bound, out);
    if (fresh) bound.erase(f->vars[0]);
    return;
  }
  for (const auto& v : f->vars)
    if (!bound.count(v)) out.insert(v);
  for (const auto& c : f->children) collectFree(c, bound, out);
}

// Substitutes free variables by `mapping`, renaming binders that clash with `avoid`.
FormulaPtr substitute(const FormulaPtr& f, std::map<std::string, std::string> mapping,
                      std::set<std::string>& avoid) {
  auto copy = std::make_shared<Formula>(*f);
  if (f->kind == FormulaKind::Exists) {
    std::string name = f->vars[0];
    std::string fresh = name;
    for (int i = 1; avoid.count(fresh); ++i) fresh = name + "_" + std::to_string(i);
    avoid.insert(fresh);
    mapping[name] = fresh;
    copy->vars[0] = fresh;
    copy->children[0] = substitute(f->children[0], std::move(mapping), avoid);
    return copy;
  }
  for (auto& v : copy->vars)
    if (auto it = mapping.find(v); it != mapping.end()) v = it->second;
  for (auto& c : copy->children) c = substitute(c, mapping, avoid);
  return copy;
}

FormulaPtr expandWith(const FormulaPtr& f, std::set<std::string>& avoid) {
  if (f->kind == FormulaKind::Macro) {
    std::vector<std::string> params;
    for (std::size_t i = 0; i < f->vars.size(); ++i) params.push_back("P" + std::to_string(i + 1));
    auto body = parseFormula(macroDefinitionText(f->macro, f->parameter), params);
    std::map<std::string, std::string> mapping;
    for (std::size_t i = 0; i < params.size(); ++i) mapping[params[i]] = f->vars[i];
    return expandWith(substitute(body, mapping, avoid), avoid);
  }
  if (f->children.empty()) return f;
  auto copy = std::make_shared<Formula>(*f);
  for (auto& c : copy->children) c = expandWith(c, avoid);
  return copy;
}

void format(const FormulaPtr& f, std::ostringstream& out) {
  switch (f->kind) {
    case FormulaKind::True: out << "true"; return;
    case FormulaKind::False: out << "false"; return;
    case FormulaKind::Not: out << "(not "; break;
    case FormulaKind::And: out << "(and"; break;
    case FormulaKind::Or: out << "(or"; break;
    case FormulaKind::Exists: out << "(exists " << f->vars[0] << ' '; break;
    case FormulaKind::Atom:
      out << '(' << atomName(f->atom);
      for (const auto& v : f->vars) out << ' ' << v;
      if (!f->symbol.empty()) out << ' ' << f->symbol;
      out << ')';
      return;
    case FormulaKind::Macro:
      out << '(' << macroName(f->macro);
      if (macroHasParameter(f->macro)) out << ' ' << f->parameter;
      for (const auto& v : f->vars) out << ' ' << v;
      out << ')';
      return;
  }
  bool spaced = f->kind == FormulaKind::And || f->kind == FormulaKind::Or;
  for (const auto& c : f->children) {
    if (spaced) out << ' ';
    format(c, out);
  }
  out << ')';
}

void collectLabels(const FormulaPtr& f, AtomKind kind, std::set<std::string>& out) {
  if (f->kind == FormulaKind::Atom && f->atom == kind) out.insert(f->symbol);
  for (const auto& c : f->children) collectLabels(c, kind, out);
}

}  // namespace

FormulaPtr parseFormula(const std::string& text, const std::vector<std::string>& freeVars) {
  Parser parser(text, freeVars);
  return parser.parseSentence();
}

FormulaPtr loadFormula(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parseFormula(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  }
}

std::string formatFormula(const FormulaPtr& f) {
  std::ostringstream out;
  format(f, out);
  return out.str();
}

std::set<std::string> freeVariables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collectFree(f, bound, out);
  return out;
}

bool containsMacro(const FormulaPtr& f) {
  if (f->kind == FormulaKind::Macro) return true;
  for (const auto& c : f->children)
    if (containsMacro(c)) return true;
  return false;
}

std::set<std::string> mentionedVertexLabels(const FormulaPtr& f) {
  std::set<std::string> out;
  collectLabels(f, AtomKind::VertexLabel, out);
  return out;
}

std::set<std::string> mentionedEdgeLabels(const FormulaPtr& f) {
  std::set<std::string> out;
  collectLabels(f, AtomKind::EdgeLabel, out);
  return out;
}

std::size_t formulaSize(const FormulaPtr& f) {
  std::size_t n = 1;
  for (const auto& c : f->children) n += formulaSize(c);
  return n;
}

FormulaPtr expandMacros(const FormulaPtr& f) {
  std::set<std::string> avoid;
  collectNames(f, avoid);
  return expandWith(f, avoid);
}

namespace {

// Fragments shared by several definitions. P1, P2 are the macro parameters.
constexpr const char* kConnected = R"(
(forall X
  (implies
    (and (V X)
         (exists a (and (singleton a) (subset a X)))
         (exists b (and (singleton b) (V b) (not (subset b X)))))
    (exists e u w
      (and (singleton e) (E e)
           (singleton u) (subset u X)
           (singleton w) (V w) (not (subset w X))
           (or (and (src e u) (tgt e w)) (and (src e w) (tgt e u)))))))
)";

// No loop, and every nonempty edge set has a vertex incident to exactly one of its edges.
constexpr const char* kForest = R"(
(and
  (not (exists e v (and (singleton e) (singleton v) (src e v) (tgt e v))))
  (forall Y
    (implies
      (and (E Y) (exists a (and (singleton a) (subset a Y))))
      (exists v e
        (and (singleton v) (V v) (singleton e) (subset e Y) (or (src e v) (tgt e v))
             (forall f
               (implies (and (singleton f) (subset f Y) (or (src f v) (tgt f v)))
                        (subset f e))))))))
)";

constexpr const char* kBipartite = R"(
(exists X
  (and (V X)
       (forall e
         (implies (and (singleton e) (E e))
           (exists u w
             (and (singleton u) (singleton w) (src e u) (tgt e w)
                  (or (and (subset u X) (not (subset w X)))
                      (and (subset w X) (not (subset u X))))))))))
)";

constexpr const char* kHamiltonian = R"(
(and (connected)
     (exists a (and (singleton a) (V a)))
     (forall v
       (implies (and (singleton v) (V v))
         (and (exists e (and (singleton e) (src e v)
                             (forall f (implies (and (singleton f) (src f v)) (subset f e)))))
              (exists e (and (singleton e) (tgt e v)
                             (forall f (implies (and (singleton f) (tgt f v)) (subset f e)))))))))
)";

// P1 = vertices, P2 = edges of a directed simple path; the empty path is allowed.
constexpr const char* kPath = R"(
(and (V P1) (E P2)
  (forall e
    (implies (and (singleton e) (subset e P2))
      (exists u w (and (singleton u) (singleton w) (src e u) (tgt e w) (subset u P1) (subset w P1)))))
  (forall v
    (implies (and (singleton v) (subset v P1))
      (forall e f
        (implies (and (singleton e) (singleton f) (subset e P2) (subset f P2)
                      (or (and (src e v) (src f v)) (and (tgt e v) (tgt f v))))
                 (subset e f)))))
  (forall Z
    (implies
      (and (subset Z P1)
           (exists a (and (singleton a) (subset a Z)))
           (exists b (and (singleton b) (subset b P1) (not (subset b Z)))))
      (exists e u w
        (and (singleton e) (subset e P2)
             (singleton u) (subset u Z)
             (singleton w) (subset w P1) (not (subset w Z))
             (or (and (src e u) (tgt e w)) (and (src e w) (tgt e u)))))))
  (implies (exists a (and (singleton a) (subset a P1)))
           (exists s (and (singleton s) (subset s P1)
                          (not (exists e (and (singleton e) (subset e P2) (tgt e s))))))))
)";

// Q = edges of a directed simple path or simple cycle.
constexpr const char* kPathOrCycleEdges = R"(
  (E Q)
  (forall v e f
    (implies (and (singleton v) (singleton e) (singleton f) (subset e Q) (subset f Q)
                  (or (and (src e v) (src f v)) (and (tgt e v) (tgt f v))))
             (subset e f)))
  (forall R
    (implies
      (and (subset R Q)
           (exists a (and (singleton a) (subset a R)))
           (exists b (and (singleton b) (subset b Q) (not (subset b R)))))
      (exists v e f
        (and (singleton v) (singleton e) (singleton f) (subset e R) (subset f Q) (not (subset f R))
             (or (src e v) (tgt e v)) (or (src f v) (tgt f v))))))
)";

}  // namespace

std::string macroDefinitionText(MacroKind kind, int parameter) {
  switch (kind) {
    case MacroKind::Connected: return kConnected;
    case MacroKind::Forest: return kForest;
    case MacroKind::Bipartite: return kBipartite;
    case MacroKind::HamiltonianCycle: return kHamiltonian;
    case MacroKind::Path: return kPath;
    case MacroKind::PathVertices: return "(exists Y (path P1 Y))";
    case MacroKind::PathEdges: return "(exists X (path X P1))";
    case MacroKind::Unitable: {
      if (parameter < 1) throw InvalidArgument("unitable needs k >= 1");
      std::string vars, paths, cover;
      for (int i = 1; i <= parameter; ++i) {
        auto x = "X" + std::to_string(i), y = "Y" + std::to_string(i);
        vars += " " + x + " " + y;
        paths += " (path " + x + " " + y + ")";
        cover += " (subset a " + x + ") (subset a " + y + ")";
      }
      return "(exists" + vars + " (and" + paths + " (forall a (implies (singleton a) (or" + cover +
             ")))))";
    }
    case MacroKind::ZigZag: {
      if (parameter < 1) throw InvalidArgument("zigzag needs z >= 1");
      // No simple path or cycle holds z+1 distinct edges pairwise crossing a
      // common cut. Q is such an edge set iff every vertex has at most one in-
      // and one out-edge in Q and Q is connected.
      std::string vars, body;
      const int m = parameter + 1;
      for (int i = 1; i <= m; ++i) {
        auto y = "y" + std::to_string(i);
        vars += " " + y;
        body += " (singleton " + y + ") (subset " + y + " Q)";
        for (int j = 1; j < i; ++j) {
          auto x = "y" + std::to_string(j);
          body += " (not (subset " + x + " " + y + ")) (same-frontier " + x + " " + y + ")";
        }
      }
      // The crossing witnesses are projected before meeting the path condition.
      return std::string("(not (exists Q (and") + kPathOrCycleEdges + " (exists" + vars + " (and" + body + ")))))";
    }
  }
  throw InvalidArgument("unknown macro");
}

}  // namespace slicecount
