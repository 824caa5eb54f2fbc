// Fuel-bounded big-step approximation of the head-distribution semantics.
//
// Fuel counts only the evaluations of a substituted body H[N/x]; variables,
// abstractions and choices are evaluated at the fuel they were given. With
// fuel 0 every such continuation contributes nothing.
#pragma once

#include <cstddef>
#include <unordered_map>

#include "plam/distr.hpp"
#include "plam/limits.hpp"

namespace plam {

struct EvalResult {
  Distr distr;
  Dyadic deficit;  // 1 - mass(distr)
};

struct EvalLimits {
  std::size_t maxCalls = std::size_t{1} << 24;     // distinct (term, fuel) evaluations
  std::size_t maxTermSize = std::size_t{1} << 20;  // size of any substituted body
};

// Memoizing evaluator. Results are independent of the order of queries; the
// cache only saves work. Not safe for concurrent use of one instance.
class Evaluator {
 public:
  explicit Evaluator(EvalLimits limits = {}) : limits_(limits) {}

  const Distr& eval(const Term& m, unsigned fuel);
  EvalResult evalFuel(const Term& m, unsigned fuel);

  std::size_t cacheSize() const { return memo_.size(); }

 private:
  struct Key {
    Term term;
    unsigned fuel;
    bool operator==(const Key& o) const { return fuel == o.fuel && term == o.term; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.term.hash() * 31 + k.fuel; }
  };

  Distr compute(const Term& m, unsigned fuel);

  EvalLimits limits_;
  std::unordered_map<Key, Distr, KeyHash> memo_;
};

EvalResult evalFuel(const Term& m, unsigned fuel, EvalLimits limits = {});
Dyadic evalMass(const Term& m, unsigned fuel, EvalLimits limits = {});

enum class Derivability { Derivable, Unknown };

// Searches fuel 0..fuelCap for an approximant dominating d.
Derivability checkBigStepDerivable(const Term& m, const Distr& d, unsigned fuelCap,
                                   EvalLimits limits = {});

}  // namespace plam
