// Head reduction and head spine reduction as probabilistic transition
// relations, with exact n-step convergence probabilities.
//
// Head normal forms are absorbing: a step from an hnf is the self-loop
// (1, itself), and all n-step tables are cumulative.
#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "plam/bigstep.hpp"
#include "plam/distr.hpp"
#include "plam/limits.hpp"

namespace plam {

enum class Strategy { Head, Spine };

struct Outcome {
  Dyadic prob;
  Term successor;
};
using StepOutcome = std::vector<Outcome>;

StepOutcome headStep(const Term& m);
StepOutcome spineStep(const Term& m);
StepOutcome step(const Term& m, Strategy s);

struct StepLimits {
  std::size_t maxFrontier = std::size_t{1} << 16;  // distinct live terms after a step
  std::size_t maxTermSize = std::size_t{1} << 16;
};

// Probability of having reached each hnf within n steps.
Distr stepN(const Term& m, unsigned n, Strategy s, StepLimits limits = {});
// Rows 0..n of the cumulative convergence table.
std::vector<Distr> convergenceTable(const Term& m, unsigned n, Strategy s, StepLimits limits = {});
// Lower bound on the head-reduction limit distribution after at most n steps.
EvalResult hInfLower(const Term& m, unsigned n, StepLimits limits = {});

// The reduction tree up to a depth; hnfs are leaves. `prob` is the edge probability.
struct StepTree {
  Dyadic prob;
  Term term;
  std::vector<StepTree> children;
};
StepTree traceTree(const Term& m, unsigned n, Strategy s, std::size_t maxNodes = std::size_t{1} << 16);

// Certifies that m never reaches an hnf: the head-reduction graph from m is
// finite, fully explored within the caps, and contains no hnf. A false result
// means "not certified", not "converges".
struct DivergenceLimits {
  std::size_t maxStates = 64;
  std::size_t maxTermSize = 4096;
};

class DivergenceOracle {
 public:
  explicit DivergenceOracle(DivergenceLimits limits = {}) : limits_(limits) {}
  bool certifiedDivergent(const Term& m);

 private:
  DivergenceLimits limits_;
  std::unordered_map<Term, bool, TermHash> memo_;
};

// Sound two-sided bounds on the limit distribution: `lower` is the mass that
// reached an hnf within `steps` head steps, and the total limit mass is at
// most `upperMass` (frontier terms certified divergent are discounted).
struct MassBounds {
  Distr lower;
  Dyadic upperMass;
};
MassBounds convergenceBounds(const Term& m, unsigned steps, DivergenceOracle& oracle,
                             StepLimits limits = {});

// A deterministic head path from m' meeting a head path from m of one more step.
struct CommutationWitness {
  unsigned n0;
  Term meet;
};
// For a spine step m -> m' of probability p, searches n0 <= bound such that m
// stands at some M0 after n0+1 head steps with probability at least p, where
// m' reaches M0 in n0 head steps of probability 1. "At least" rather than
// "exactly": head reduction merges alpha-equal branches that the spine step
// kept apart, as in (\x.y (+) x) y.
std::optional<CommutationWitness> commutationWitness(const Term& m, const Term& mPrime,
                                                     const Dyadic& p, unsigned bound);
bool replayCommutation(const Term& m, const Term& mPrime, const Dyadic& p,
                       const CommutationWitness& w);

}  // namespace plam
