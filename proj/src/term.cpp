#include "plam/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <unordered_set>

namespace plam {

struct Term::Node {
  TermKind kind;
  std::uint32_t index = 0;
  std::string name;
  std::optional<Term> a;
  std::optional<Term> b;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::uint32_t loose = 0;
  bool hasFree = false;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::bound(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Bound;
  n->index = index;
  n->hash = mix(1, index);
  n->loose = index + 1;
  return Term(std::move(n));
}

Term Term::free(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Free;
  n->hash = mix(2, std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->hasFree = true;
  return Term(std::move(n));
}

Term Term::lam(Term body, std::string hint) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->name = std::move(hint);
  n->size = body.size() + 1;
  n->hash = mix(3, body.hash());
  n->loose = body.looseBound() == 0 ? 0 : body.looseBound() - 1;
  n->hasFree = body.hasFree();
  n->a = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->size = fun.size() + arg.size() + 1;
  n->hash = mix(mix(4, fun.hash()), arg.hash());
  n->loose = std::max(fun.looseBound(), arg.looseBound());
  n->hasFree = fun.hasFree() || arg.hasFree();
  n->a = std::move(fun);
  n->b = std::move(arg);
  return Term(std::move(n));
}

Term Term::choice(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Choice;
  n->size = left.size() + right.size() + 1;
  n->hash = mix(mix(5, left.hash()), right.hash());
  n->loose = std::max(left.looseBound(), right.looseBound());
  n->hasFree = left.hasFree() || right.hasFree();
  n->a = std::move(left);
  n->b = std::move(right);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::body() const { return *node_->a; }
const Term& Term::fun() const { return *node_->a; }
const Term& Term::arg() const { return *node_->b; }
const Term& Term::left() const { return *node_->a; }
const Term& Term::right() const { return *node_->b; }
std::size_t Term::size() const { return node_->size; }
std::size_t Term::hash() const { return node_->hash; }
std::uint32_t Term::looseBound() const { return node_->loose; }
bool Term::hasFree() const { return node_->hasFree; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Bound:
      return a.index() == b.index();
    case TermKind::Free:
      return a.name() == b.name();
    case TermKind::Lam:
      return a.body() == b.body();
    case TermKind::App:
    case TermKind::Choice:
      return a.node_->a == b.node_->a && a.node_->b == b.node_->b;
  }
  return false;
}

int compareTerms(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case TermKind::Bound:
      return a.index() == b.index() ? 0 : (a.index() < b.index() ? -1 : 1);
    case TermKind::Free:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case TermKind::Lam:
      return compareTerms(a.body(), b.body());
    case TermKind::App:
    case TermKind::Choice: {
      int c = compareTerms(a.fun(), b.fun());
      return c != 0 ? c : compareTerms(a.arg(), b.arg());
    }
  }
  return 0;
}

ParseError::ParseError(std::size_t position, const std::string& what)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + what),
      position_(position) {}

// ---------------------------------------------------------------------------
// Substitution

Term shift(const Term& t, std::uint32_t by, std::uint32_t cutoff) {
  if (by == 0 || t.looseBound() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      return Term::bound(t.index() + by);
    case TermKind::Free:
      return t;
    case TermKind::Lam:
      return Term::lam(shift(t.body(), by, cutoff + 1), t.name());
    case TermKind::App:
      return Term::app(shift(t.fun(), by, cutoff), shift(t.arg(), by, cutoff));
    case TermKind::Choice:
      return Term::choice(shift(t.left(), by, cutoff), shift(t.right(), by, cutoff));
  }
  return t;
}

namespace {

Term instantiateAt(const Term& t, const Term& arg, std::uint32_t depth) {
  if (t.looseBound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      if (t.index() == depth) return shift(arg, depth);
      return Term::bound(t.index() - 1);
    case TermKind::Free:
      return t;
    case TermKind::Lam:
      return Term::lam(instantiateAt(t.body(), arg, depth + 1), t.name());
    case TermKind::App:
      return Term::app(instantiateAt(t.fun(), arg, depth), instantiateAt(t.arg(), arg, depth));
    case TermKind::Choice:
      return Term::choice(instantiateAt(t.left(), arg, depth),
                          instantiateAt(t.right(), arg, depth));
  }
  return t;
}

Term instantiateAllAt(const Term& t, const std::vector<Term>& args, std::uint32_t depth) {
  if (t.looseBound() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound: {
      std::uint32_t j = t.index() - depth;
      if (j < args.size()) return args[j];
      return Term::bound(t.index() - static_cast<std::uint32_t>(args.size()));
    }
    case TermKind::Free:
      return t;
    case TermKind::Lam:
      return Term::lam(instantiateAllAt(t.body(), args, depth + 1), t.name());
    case TermKind::App:
      return Term::app(instantiateAllAt(t.fun(), args, depth),
                       instantiateAllAt(t.arg(), args, depth));
    case TermKind::Choice:
      return Term::choice(instantiateAllAt(t.left(), args, depth),
                          instantiateAllAt(t.right(), args, depth));
  }
  return t;
}

Term substituteAt(const Term& m, const std::string& name, const Term& n, std::uint32_t depth) {
  if (!m.hasFree()) return m;
  switch (m.kind()) {
    case TermKind::Bound:
      return m;
    case TermKind::Free:
      return m.name() == name ? shift(n, depth) : m;
    case TermKind::Lam:
      return Term::lam(substituteAt(m.body(), name, n, depth + 1), m.name());
    case TermKind::App:
      return Term::app(substituteAt(m.fun(), name, n, depth), substituteAt(m.arg(), name, n, depth));
    case TermKind::Choice:
      return Term::choice(substituteAt(m.left(), name, n, depth),
                          substituteAt(m.right(), name, n, depth));
  }
  return m;
}

}  // namespace

Term instantiate(const Term& body, const Term& arg) { return instantiateAt(body, arg, 0); }

Term instantiateAll(const Term& body, const std::vector<Term>& args) {
  if (args.empty()) return body;
  return instantiateAllAt(body, args, 0);
}

Term substitute(const Term& m, const std::string& name, const Term& n) {
  return substituteAt(m, name, n, 0);
}

Term abstractFree(const Term& m, const std::string& name) {
  // Make room for the new binder, then turn the name into that binder's index.
  return Term::lam(substitute(shift(m, 1), name, Term::bound(0)), name);
}

Term closeTerm(const Term& m) {
  auto names = freeVars(m);
  Term t = m;
  for (auto it = names.rbegin(); it != names.rend(); ++it) t = abstractFree(t, *it);
  return t;
}

std::set<std::string> freeVars(const Term& t) {
  std::set<std::string> out;
  std::function<void(const Term&)> walk = [&](const Term& u) {
    if (!u.hasFree()) return;
    switch (u.kind()) {
      case TermKind::Free:
        out.insert(u.name());
        break;
      case TermKind::Bound:
        break;
      case TermKind::Lam:
        walk(u.body());
        break;
      case TermKind::App:
      case TermKind::Choice:
        walk(u.fun());
        walk(u.arg());
        break;
    }
  };
  walk(t);
  return out;
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const Term& t) {
  std::uint32_t binders = 0;
  std::vector<std::string> hints;
  const Term* cur = &t;
  while (cur->isLam()) {
    hints.push_back(cur->name());
    cur = &cur->body();
    ++binders;
  }
  std::vector<Term> args;
  const Term* head = cur;
  while (head->isApp()) {
    args.push_back(head->arg());
    head = &head->fun();
  }
  std::reverse(args.begin(), args.end());

  if (head->isVar()) return HnfView{binders, *head, std::move(args), std::move(hints)};
  if (head->isChoice()) return RedexView{HeadContext{binders, std::move(args), std::move(hints)}, RedexKind::Choice, *head};
  // Head is a lambda: it must have at least one argument, otherwise the
  // peeling loop would have consumed it as a binder.
  Term redex = Term::app(*head, args.front());
  args.erase(args.begin());
  return RedexView{HeadContext{binders, std::move(args), std::move(hints)}, RedexKind::Beta,
                   std::move(redex)};
}

bool isHnf(const Term& t) { return std::holds_alternative<HnfView>(classify(t)); }

bool isNeutral(const Term& t) {
  if (t.isLam()) return false;
  const Term* head = &t;
  while (head->isApp()) head = &head->fun();
  return head->isVar();
}

namespace {

Term wrapBinders(Term t, std::uint32_t binders, const std::vector<std::string>& hints) {
  for (std::uint32_t i = binders; i-- > 0;) t = Term::lam(t, i < hints.size() ? hints[i] : "x");
  return t;
}

}  // namespace

Term assemble(const HnfView& h) {
  Term t = h.head;
  for (const auto& a : h.args) t = Term::app(t, a);
  return wrapBinders(t, h.binders, h.hints);
}

Term plug(const HeadContext& ctx, const Term& hole) {
  Term t = hole;
  for (const auto& a : ctx.spineArgs) t = Term::app(t, a);
  return wrapBinders(t, ctx.binders, ctx.hints);
}

// ---------------------------------------------------------------------------
// Constants

const std::vector<std::string>& constantNames() {
  static const std::vector<std::string> names{"I", "T", "F", "Delta", "Omega", "Theta", "hid"};
  return names;
}

Term constant(std::string_view name) {
  static const std::map<std::string, Term, std::less<>> table = [] {
    std::map<std::string, Term, std::less<>> m;
    Term x = Term::bound(0);
    Term y = Term::bound(0);
    Term outer = Term::bound(1);
    m.emplace("I", Term::lam(x, "x"));
    m.emplace("T", Term::lam(Term::lam(outer, "y"), "x"));
    m.emplace("F", Term::lam(Term::lam(y, "y"), "x"));
    Term delta = Term::lam(Term::app(x, x), "x");
    m.emplace("Delta", delta);
    Term omega = Term::app(delta, delta);
    m.emplace("Omega", omega);
    // A = \x y. y (x x y)
    Term a = Term::lam(
        Term::lam(Term::app(Term::bound(0), Term::app(Term::app(Term::bound(1), Term::bound(1)),
                                                      Term::bound(0))),
                  "y"),
        "x");
    m.emplace("Theta", Term::app(a, a));
    m.emplace("hid", Term::choice(omega, m.at("I")));
    return m;
  }();
  auto it = table.find(name);
  if (it == table.end()) throw std::out_of_range("unknown constant " + std::string(name));
  return it->second;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Lambda, Dot, LParen, RParen, Choice, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool identStart(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool identChar(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view s) {
  static constexpr std::string_view kLambda = "\xCE\xBB";    // λ
  static constexpr std::string_view kOplus = "\xE2\x8A\x95";  // ⊕
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (s.compare(i, 3, "(+)") == 0) {
      out.push_back({Tok::Choice, "(+)", i});
      i += 3;
    } else if (s.compare(i, kOplus.size(), kOplus) == 0) {
      out.push_back({Tok::Choice, "(+)", i});
      i += kOplus.size();
    } else if (s.compare(i, kLambda.size(), kLambda) == 0) {
      out.push_back({Tok::Lambda, "\\", i});
      i += kLambda.size();
    } else if (c == '\\') {
      out.push_back({Tok::Lambda, "\\", i++});
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", i++});
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", i++});
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", i++});
    } else if (identStart(c)) {
      std::size_t j = i;
      while (j < s.size() && identChar(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
    } else {
      throw ParseError(i, std::string("unexpected character '") + s[i] + "'");
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Term parseAll() {
    Term t = term();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    ++pos_;
  }

  // term := (lam | app) [ "(+)" term ]
  Term term() {
    Term t = peek().kind == Tok::Lambda ? lam() : app();
    if (peek().kind == Tok::Choice) {
      next();
      return Term::choice(t, term());
    }
    return t;
  }

  Term lam() {
    expect(Tok::Lambda, "lambda");
    std::vector<std::string> names;
    while (peek().kind == Tok::Ident) names.push_back(next().text);
    if (names.empty()) fail("expected binder name");
    expect(Tok::Dot, "'.'");
    for (const auto& n : names) scope_.push_back(n);
    Term body = term();
    for (std::size_t i = 0; i < names.size(); ++i) scope_.pop_back();
    for (auto it = names.rbegin(); it != names.rend(); ++it) body = Term::lam(body, *it);
    return body;
  }

  // app := atom+ [lam]; a trailing lambda is the last argument.
  Term app() {
    Term t = atom();
    while (true) {
      Tok k = peek().kind;
      if (k == Tok::Ident || k == Tok::LParen) {
        t = Term::app(t, atom());
      } else if (k == Tok::Lambda) {
        return Term::app(t, lam());
      } else {
        return t;
      }
    }
  }

  Term atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::Ident) {
      next();
      return resolve(tok.text);
    }
    if (tok.kind == Tok::LParen) {
      next();
      Term t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (tok.kind == Tok::End) fail("unexpected end of input");
    fail("unexpected '" + tok.text + "'");
  }

  Term resolve(const std::string& name) const {
    for (std::size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == name) return Term::bound(static_cast<std::uint32_t>(scope_.size() - 1 - i));
    }
    const auto& consts = constantNames();
    if (std::find(consts.begin(), consts.end(), name) != consts.end()) return constant(name);
    return Term::free(name);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

// ---------------------------------------------------------------------------
// Printing

enum class Ctx { Top, ChoiceLeft, AppFun, AppArg };

class Printer {
 public:
  explicit Printer(const Term& t) : reserved_(freeVars(t)) {}

  void print(const Term& t, Ctx ctx) {
    switch (t.kind()) {
      case TermKind::Bound:
        if (t.index() < scope_.size()) {
          out_ += scope_[scope_.size() - 1 - t.index()];
        } else {
          // Dangling index: only reachable when printing a subterm for diagnostics.
          out_ += "#" + std::to_string(t.index() - scope_.size());
        }
        return;
      case TermKind::Free:
        out_ += t.name();
        return;
      case TermKind::Lam: {
        bool paren = ctx != Ctx::Top;
        if (paren) out_ += '(';
        out_ += '\\';
        const Term* cur = &t;
        std::size_t pushed = 0;
        while (cur->isLam()) {
          if (pushed > 0) out_ += ' ';
          std::string n = freshName(cur->name());
          out_ += n;
          scope_.push_back(std::move(n));
          ++pushed;
          cur = &cur->body();
        }
        out_ += '.';
        print(*cur, Ctx::Top);
        scope_.resize(scope_.size() - pushed);
        if (paren) out_ += ')';
        return;
      }
      case TermKind::App: {
        bool paren = ctx == Ctx::AppArg;
        if (paren) out_ += '(';
        print(t.fun(), Ctx::AppFun);
        out_ += ' ';
        print(t.arg(), Ctx::AppArg);
        if (paren) out_ += ')';
        return;
      }
      case TermKind::Choice: {
        bool paren = ctx != Ctx::Top;
        if (paren) out_ += '(';
        print(t.left(), Ctx::ChoiceLeft);
        out_ += " (+) ";
        print(t.right(), Ctx::Top);
        if (paren) out_ += ')';
        return;
      }
    }
  }

  std::string result() { return std::move(out_); }

 private:
  // Avoids free names and every enclosing binder name, so nothing is shadowed.
  std::string freshName(const std::string& hint) const {
    auto taken = [&](const std::string& n) {
      return reserved_.count(n) > 0 || std::find(scope_.begin(), scope_.end(), n) != scope_.end();
    };
    std::string base = hint;
    bool valid = !base.empty() && identStart(static_cast<unsigned char>(base[0])) &&
                 std::all_of(base.begin(), base.end(),
                             [](char c) { return identChar(static_cast<unsigned char>(c)); });
    if (!valid) base = "x";
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + std::to_string(i);
      if (!taken(n)) return n;
    }
  }

  std::set<std::string> reserved_;
  std::vector<std::string> scope_;
  std::string out_;
};

}  // namespace

Term parse(std::string_view text) { return Parser(lex(text)).parseAll(); }

std::string print(const Term& t) {
  Printer p(t);
  p.print(t, Ctx::Top);
  return p.result();
}

}  // namespace plam
