// Terms of the probabilistic lambda calculus.
//
// Terms are immutable and shared. Bound variables are stored as indices
// counting enclosing binders, so alpha-equivalence is structural equality.
// Free variables keep their surface names. Each Lam remembers the name it was
// written with, but that hint never takes part in equality or hashing.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plam {

enum class TermKind : std::uint8_t { Bound, Free, Lam, App, Choice };

class Term {
 public:
  static Term bound(std::uint32_t index);
  static Term free(std::string name);
  static Term lam(Term body, std::string hint = "x");
  static Term app(Term fun, Term arg);
  static Term choice(Term left, Term right);

  TermKind kind() const;
  bool isBound() const { return kind() == TermKind::Bound; }
  bool isFree() const { return kind() == TermKind::Free; }
  bool isVar() const { return isBound() || isFree(); }
  bool isLam() const { return kind() == TermKind::Lam; }
  bool isApp() const { return kind() == TermKind::App; }
  bool isChoice() const { return kind() == TermKind::Choice; }

  std::uint32_t index() const;
  // Free-variable name, or the binder hint of a Lam.
  const std::string& name() const;
  const Term& body() const;
  const Term& fun() const;
  const Term& arg() const;
  const Term& left() const;
  const Term& right() const;

  std::size_t size() const;
  std::size_t hash() const;
  // One more than the largest dangling bound index, or 0 if there is none.
  std::uint32_t looseBound() const;
  bool closedIndices() const { return looseBound() == 0; }
  bool hasFree() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Total structural order, consistent with operator==.
int compareTerms(const Term& a, const Term& b);
struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compareTerms(a, b) < 0; }
};

inline bool alphaEq(const Term& a, const Term& b) { return a == b; }

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Names that the parser resolves to built-in terms when not shadowed by a binder.
const std::vector<std::string>& constantNames();
// The built-in term for a constant name; throws std::out_of_range for unknown names.
Term constant(std::string_view name);

Term parse(std::string_view text);
std::string print(const Term& t);

std::set<std::string> freeVars(const Term& t);
inline bool isClosed(const Term& t) { return t.closedIndices() && !t.hasFree(); }

// Shifts dangling indices >= cutoff by `by`.
Term shift(const Term& t, std::uint32_t by, std::uint32_t cutoff = 0);
// body[arg/0]: replaces index 0 of a binder body by arg, which lives outside the binder.
Term instantiate(const Term& body, const Term& arg);
// Replaces dangling indices 0..k-1 (index j by args[j]) in one pass; args must not
// contain dangling indices. Remaining dangling indices are lowered by k.
Term instantiateAll(const Term& body, const std::vector<Term>& args);
// M[N/x] for a free name x.
Term substitute(const Term& m, const std::string& name, const Term& n);
// Turns the free name into the variable of a new outer binder: lambda name.m
Term abstractFree(const Term& m, const std::string& name);
// lambda x1...xn.m over the free names of m, outermost binder first, in lexicographic order.
Term closeTerm(const Term& m);

// Binder name hints, outermost first, travel with the views so that
// reassembly preserves how the term prints.
struct HnfView {
  std::uint32_t binders = 0;
  Term head;  // a variable; bound indices refer to the context inside the binders
  std::vector<Term> args;
  std::vector<std::string> hints = {};
};

struct HeadContext {
  std::uint32_t binders = 0;
  std::vector<Term> spineArgs;
  std::vector<std::string> hints = {};
};

enum class RedexKind : std::uint8_t { Beta, Choice };

struct RedexView {
  HeadContext context;
  RedexKind kind;
  Term redex;  // (lambda y.P) Q or P (+) Q, seen from inside the context binders
};

using Classification = std::variant<HnfView, RedexView>;

Classification classify(const Term& t);
bool isHnf(const Term& t);
bool isNeutral(const Term& t);

Term assemble(const HnfView& h);
Term plug(const HeadContext& ctx, const Term& hole);

}  // namespace plam
