#include "plam/assignment.hpp"

#include <deque>
#include <stdexcept>

#include "plam/limits.hpp"

namespace plam {

mpq_class AssignmentProblem::mass(Subset j) const {
  auto it = r.find(j);
  return it == r.end() ? mpq_class(0) : it->second;
}

mpq_class AssignmentSolution::share(unsigned k, Subset j) const {
  auto it = s.find({k, j});
  return it == s.end() ? mpq_class(0) : it->second;
}

namespace {

void checkCap(const AssignmentProblem& p, unsigned cap) {
  if (p.size() > cap) {
    throw ResourceError("assignment-n", std::to_string(p.size()) + " elements, cap " + std::to_string(cap));
  }
  if (p.size() > 31) throw std::invalid_argument("assignment problems support at most 31 elements");
  Subset all = p.size() == 0 ? 0 : (Subset{1} << p.size()) - 1;
  for (const auto& [j, m] : p.r) {
    if ((j & ~all) != 0) throw std::invalid_argument("subset " + subsetToString(j) + " names unknown elements");
  }
}

bool contains(Subset j, unsigned k) { return (j >> (k - 1)) & 1U; }

}  // namespace

std::optional<Subset> assignmentCheck(const AssignmentProblem& p, unsigned cap) {
  checkCap(p, cap);
  const Subset limit = Subset{1} << p.size();
  for (Subset i = 1; i < limit; ++i) {
    mpq_class demand = 0;
    for (unsigned k = 1; k <= p.size(); ++k) {
      if (contains(i, k)) demand += p.p[k - 1];
    }
    mpq_class supply = 0;
    for (const auto& [j, m] : p.r) {
      if ((j & i) != 0) supply += m;
    }
    if (demand > supply) return i;
  }
  return std::nullopt;
}

std::variant<AssignmentSolution, Infeasible> assignmentSolve(const AssignmentProblem& p,
                                                             unsigned cap) {
  checkCap(p, cap);
  const unsigned n = p.size();
  std::vector<Subset> subsets;
  for (const auto& [j, m] : p.r) {
    if (j != 0 && m > 0) subsets.push_back(j);
  }
  // Nodes: source, one per subset, one per element, sink.
  const std::size_t source = 0;
  const std::size_t firstElement = 1 + subsets.size();
  const std::size_t sink = firstElement + n;
  const std::size_t nodes = sink + 1;
  std::vector<std::vector<mpq_class>> capacity(nodes, std::vector<mpq_class>(nodes, 0));
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const mpq_class& m = p.mass(subsets[i]);
    capacity[source][1 + i] = m;
    for (unsigned k = 1; k <= n; ++k) {
      if (contains(subsets[i], k)) capacity[1 + i][firstElement + k - 1] = m;
    }
  }
  mpq_class demand = 0;
  for (unsigned k = 1; k <= n; ++k) {
    capacity[firstElement + k - 1][sink] = p.p[k - 1];
    demand += p.p[k - 1];
  }

  // Edmonds-Karp: shortest augmenting paths keep the number of rounds
  // polynomial, independent of the capacities.
  auto flow = capacity;
  for (auto& row : flow) {
    for (auto& x : row) x = 0;
  }
  mpq_class total = 0;
  while (true) {
    std::vector<std::size_t> prev(nodes, SIZE_MAX);
    prev[source] = source;
    std::deque<std::size_t> queue{source};
    while (!queue.empty() && prev[sink] == SIZE_MAX) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < nodes; ++v) {
        if (prev[v] == SIZE_MAX && capacity[u][v] - flow[u][v] > 0) {
          prev[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (prev[sink] == SIZE_MAX) break;
    mpq_class push = -1;
    for (std::size_t v = sink; v != source; v = prev[v]) {
      mpq_class residual = capacity[prev[v]][v] - flow[prev[v]][v];
      if (push < 0 || residual < push) push = residual;
    }
    for (std::size_t v = sink; v != source; v = prev[v]) {
      flow[prev[v]][v] += push;
      flow[v][prev[v]] -= push;
    }
    total += push;
  }

  if (total < demand) {
    auto witness = assignmentCheck(p, cap);
    if (!witness) throw std::logic_error("max-flow short of demand but every subset is covered");
    return Infeasible{*witness};
  }
  AssignmentSolution sol;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const mpq_class& m = p.mass(subsets[i]);
    for (unsigned k = 1; k <= n; ++k) {
      if (!contains(subsets[i], k)) continue;
      mpq_class f = flow[1 + i][firstElement + k - 1];
      mpq_class s = f / m;
      s.canonicalize();
      sol.s[{k, subsets[i]}] = s;
    }
  }
  // Subsets without mass get share 0 for each member.
  for (const auto& [j, m] : p.r) {
    if (j == 0 || m > 0) continue;
    for (unsigned k = 1; k <= n; ++k) {
      if (contains(j, k)) sol.s[{k, j}] = 0;
    }
  }
  return sol;
}

bool verifyAssignment(const AssignmentProblem& p, const AssignmentSolution& s) {
  const unsigned n = p.size();
  for (const auto& [key, v] : s.s) {
    if (v < 0 || v > 1) return false;
    if (key.first < 1 || key.first > n || !contains(key.second, key.first)) return false;
  }
  for (unsigned k = 1; k <= n; ++k) {
    mpq_class covered = 0;
    for (const auto& [j, m] : p.r) {
      if (contains(j, k)) covered += s.share(k, j) * m;
    }
    if (p.p[k - 1] > covered) return false;
  }
  std::map<Subset, mpq_class> spent;
  for (const auto& [key, v] : s.s) spent[key.second] += v;
  for (const auto& [j, total] : spent) {
    if (total > 1) return false;
  }
  return true;
}

std::string subsetToString(Subset s) {
  std::string out = "{";
  bool first = true;
  for (unsigned k = 1; k <= 32; ++k) {
    if (k <= 31 && contains(s, k)) {
      if (!first) out += ",";
      out += std::to_string(k);
      first = false;
    }
  }
  return out + "}";
}

Subset subsetFromString(const std::string& text) {
  auto fail = [&]() -> Subset { throw std::invalid_argument("bad subset '" + text + "'"); };
  std::size_t a = text.find_first_not_of(" \t");
  std::size_t b = text.find_last_not_of(" \t");
  if (a == std::string::npos || text[a] != '{' || text[b] != '}') fail();
  Subset s = 0;
  std::string item;
  auto flush = [&]() {
    auto x = item.find_first_not_of(" \t");
    if (x == std::string::npos) {
      item.clear();
      return false;
    }
    std::string digits = item.substr(x, item.find_last_not_of(" \t") - x + 1);
    if (digits.find_first_not_of("0123456789") != std::string::npos) fail();
    unsigned long k = std::stoul(digits);
    if (k < 1 || k > 31) fail();
    s |= Subset{1} << (k - 1);
    item.clear();
    return true;
  };
  for (std::size_t i = a + 1; i < b; ++i) {
    if (text[i] == ',') {
      if (!flush()) fail();
    } else {
      item += text[i];
    }
  }
  if (!flush() && s != 0) fail();
  return s;
}

}  // namespace plam
