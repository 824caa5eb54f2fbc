// Level-indexed probabilistic Nakajima trees.
//
// The tree of an hnf lambda x1..xn. y M1..Mm is infinitely eta-expanded: it has
// binders x1, x2, ... and children PT(M1), ..., PT(Mm), PT(x_{n+1}), ...
// A ValueTree stores the finite prefix (n, y, [PT(M1)..PT(Mm)]) and leaves the
// tail implicit. Binders are named by position: the j-th binder of a node at
// nesting depth d is the free name binderName(d, j), which the parser cannot
// produce. Canonical forms drop a trailing child equal to the eta tree of the
// last binder, together with that binder, so equal infinite trees have equal
// finite representations.
//
// Level 1 keeps only the head: every child is the bottom tree, so the tree is
// determined by the head and, if the head is one of the node's own binders,
// its position.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plam/bigstep.hpp"

namespace plam {

std::string binderName(unsigned depth, unsigned position);
bool isBinderName(const std::string& name);
// x1, z2, w1, ...: one letter per nesting depth.
std::string displayName(const std::string& name);

class ProbTree;

struct ValueTree {
  unsigned level = 1;
  unsigned depth = 0;  // nesting depth; names the tail binders, not compared
  unsigned binders = 0;
  std::string head;
  std::vector<ProbTree> args;

  int offset() const { return static_cast<int>(binders) - static_cast<int>(args.size()); }
  // The i-th child (1-based), reading past the explicit list into the eta tail.
  ProbTree child(unsigned i) const;
};

class ProbTree {
 public:
  unsigned level = 0;
  std::vector<std::pair<ValueTree, Dyadic>> weights;  // sorted, keys distinct
  Dyadic deficit;

  Dyadic mass() const;
  Dyadic weight(const ValueTree& t) const;
  // True when no deficit occurs anywhere in the tree.
  bool exact() const;
  // Deficit at this node plus the largest child uncertainty below each key,
  // weighted by the key's mass.
  Dyadic uncertainty() const;
};

int compareValueTrees(const ValueTree& a, const ValueTree& b);
int compareProbTrees(const ProbTree& a, const ProbTree& b);
inline bool operator==(const ValueTree& a, const ValueTree& b) { return compareValueTrees(a, b) == 0; }
inline bool operator==(const ProbTree& a, const ProbTree& b) { return compareProbTrees(a, b) == 0; }

ProbTree etaTree(const std::string& var, unsigned level, unsigned depth = 0);

// Builds trees from fuel-bounded evaluations, sharing one evaluator.
class TreeBuilder {
 public:
  explicit TreeBuilder(unsigned fuel, EvalLimits limits = {}) : eval_(limits), fuel_(fuel) {}

  ProbTree probTree(const Term& m, unsigned level, unsigned depth = 0);
  ValueTree valueTree(const Term& hnf, unsigned level, unsigned depth = 0);
  ValueTree valueTree(const HnfView& h, unsigned level, unsigned depth = 0);

  unsigned fuel() const { return fuel_; }
  Evaluator& evaluator() { return eval_; }

 private:
  Evaluator eval_;
  unsigned fuel_;
};

ProbTree probTree(const Term& m, unsigned level, unsigned fuel);
ValueTree valueTree(const HnfView& h, unsigned level, unsigned fuel);

enum class TreeVerdictKind { Equal, Different, Unknown };

struct TreeVerdict {
  TreeVerdictKind kind = TreeVerdictKind::Unknown;
  // Different: child indices (1-based) leading to the node whose distributions
  // separate, and the separated masses there.
  std::vector<unsigned> path;
  Dyadic leftWeight;
  Dyadic rightWeight;
  // Unknown: how much mass is unaccounted for.
  Dyadic bound;
};

// Throws std::invalid_argument when the levels differ.
TreeVerdict treeEq(const ProbTree& a, const ProbTree& b);
// Whether two value trees of the same level are certainly different.
bool certainlyDifferent(const ValueTree& a, const ValueTree& b);

}  // namespace plam
