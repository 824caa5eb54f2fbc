// Deliberately naive reference implementations used only by the tests.
//
// Terms here are named trees with capture-avoiding substitution by renaming,
// evaluated without memoization or sharing. Results are converted back to
// library terms through the printer and parser.
#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plam/distr.hpp"
#include "plam/term.hpp"

namespace oracle {

struct Node;
using NTerm = std::shared_ptr<const Node>;

struct Node {
  enum Kind { Var, Lam, App, Choice } kind;
  std::string name;  // variable name or binder
  NTerm a, b;        // body / function and argument / left and right
};

NTerm var(const std::string& x);
NTerm lam(const std::string& x, NTerm body);
NTerm app(NTerm f, NTerm a);
NTerm choice(NTerm l, NTerm r);

NTerm fromTerm(const plam::Term& t);
std::string show(const NTerm& t);  // fully parenthesized surface syntax
plam::Term toTerm(const NTerm& t);
std::set<std::string> freeVars(const NTerm& t);
NTerm subst(const NTerm& m, const std::string& x, const NTerm& n);

using Dist = std::vector<std::pair<NTerm, mpq_class>>;
plam::Distr toDistr(const Dist& d);

// The fuel-bounded big-step rules applied literally.
Dist eval(const NTerm& m, unsigned fuel);

bool isHnf(const NTerm& t);
// nullopt for head normal forms.
std::optional<std::vector<std::pair<mpq_class, NTerm>>> headStep(const NTerm& t);
// Every head-reduction path of at most n steps, keeping those ending in an hnf.
Dist headPaths(const NTerm& m, unsigned n);

// Feasibility of an assignment problem by exhaustive search over flows in
// units of 1/denominator; all data must be multiples of that unit.
bool assignmentFeasible(const std::vector<mpq_class>& p, const std::map<unsigned, mpq_class>& r,
                        unsigned denominator);

}  // namespace oracle
