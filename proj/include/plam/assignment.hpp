// Probabilistic assignments: shares p_1..p_n must be covered by masses r_J
// attached to subsets J of {1..n}, each r_J split among its own members.
//
// Subsets are bitmasks: element j (1-based) is bit j-1.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace plam {

using Subset = std::uint32_t;

struct AssignmentProblem {
  std::vector<mpq_class> p;
  std::map<Subset, mpq_class> r;  // omitted subsets carry 0

  unsigned size() const { return static_cast<unsigned>(p.size()); }
  mpq_class mass(Subset j) const;
};

struct AssignmentSolution {
  // s[(k, J)] for k in J, element k 1-based.
  std::map<std::pair<unsigned, Subset>, mpq_class> s;

  mpq_class share(unsigned k, Subset j) const;
};

struct Infeasible {
  Subset witness;
};

constexpr unsigned kDefaultAssignmentCap = 12;

// The first subset I, in increasing bitmask order, with sum_{i in I} p_i
// exceeding sum_{J meeting I} r_J; nullopt when every subset is covered.
// Throws ResourceError when n exceeds the cap.
std::optional<Subset> assignmentCheck(const AssignmentProblem& p, unsigned cap = kDefaultAssignmentCap);

// Exact max-flow from the masses r_J through membership edges to the shares
// p_j, scaled back by r_J.
std::variant<AssignmentSolution, Infeasible> assignmentSolve(const AssignmentProblem& p,
                                                             unsigned cap = kDefaultAssignmentCap);

// Both coverage conditions, checked exactly: p_j <= sum_{J containing j} s_{j,J} r_J,
// and sum_{j in J} s_{j,J} <= 1 with every s in [0,1].
bool verifyAssignment(const AssignmentProblem& p, const AssignmentSolution& s);

std::string subsetToString(Subset s);
// Parses "{1,2}" (or "{}"); throws std::invalid_argument.
Subset subsetFromString(const std::string& text);

}  // namespace plam
