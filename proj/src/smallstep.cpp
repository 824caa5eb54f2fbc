#include "plam/smallstep.hpp"

#include <deque>
#include <functional>
#include <set>

namespace plam {

namespace {

StepOutcome choiceStep(const HeadContext& ctx, const Term& redex) {
  if (redex.left() == redex.right()) return {{Dyadic(1), plug(ctx, redex.left())}};
  return {{Dyadic::half(), plug(ctx, redex.left())}, {Dyadic::half(), plug(ctx, redex.right())}};
}

Term contract(const Term& betaRedex) { return instantiate(betaRedex.fun().body(), betaRedex.arg()); }

}  // namespace

StepOutcome headStep(const Term& m) {
  auto c = classify(m);
  if (std::holds_alternative<HnfView>(c)) return {{Dyadic(1), m}};
  const auto& r = std::get<RedexView>(c);
  if (r.kind == RedexKind::Choice) return choiceStep(r.context, r.redex);
  return {{Dyadic(1), plug(r.context, contract(r.redex))}};
}

StepOutcome spineStep(const Term& m) {
  auto c = classify(m);
  if (std::holds_alternative<HnfView>(c)) return {{Dyadic(1), m}};
  const auto& r = std::get<RedexView>(c);
  if (r.kind == RedexKind::Choice) return choiceStep(r.context, r.redex);
  const Term& body = r.redex.fun().body();
  if (isHnf(body)) return {{Dyadic(1), plug(r.context, contract(r.redex))}};
  StepOutcome inner = spineStep(body);
  for (auto& o : inner) {
    o.successor =
        plug(r.context, Term::app(Term::lam(o.successor, r.redex.fun().name()), r.redex.arg()));
  }
  return inner;
}

StepOutcome step(const Term& m, Strategy s) {
  return s == Strategy::Head ? headStep(m) : spineStep(m);
}

namespace {

// One round of the frontier iteration: moves live mass one step forward and
// collects the mass that lands on hnfs.
void advance(Distr& frontier, Distr& absorbed, Strategy s, const StepLimits& limits) {
  Distr next;
  for (const auto& [t, w] : frontier) {
    for (const auto& o : step(t, s)) {
      if (o.successor.size() > limits.maxTermSize) {
        throw ResourceError("term-size", "reduct of size " + std::to_string(o.successor.size()));
      }
      if (isHnf(o.successor)) {
        absorbed.add(o.successor, w * o.prob);
      } else {
        next.add(o.successor, w * o.prob);
      }
    }
  }
  if (next.size() > limits.maxFrontier) {
    throw ResourceError("leaves", std::to_string(next.size()) + " live terms");
  }
  frontier = std::move(next);
}

void start(const Term& m, Distr& frontier, Distr& absorbed) {
  if (isHnf(m)) {
    absorbed.add(m, Dyadic(1));
  } else {
    frontier.add(m, Dyadic(1));
  }
}

}  // namespace

std::vector<Distr> convergenceTable(const Term& m, unsigned n, Strategy s, StepLimits limits) {
  Distr frontier;
  Distr absorbed;
  start(m, frontier, absorbed);
  std::vector<Distr> rows{absorbed};
  for (unsigned i = 0; i < n; ++i) {
    if (!frontier.empty()) advance(frontier, absorbed, s, limits);
    rows.push_back(absorbed);
  }
  return rows;
}

Distr stepN(const Term& m, unsigned n, Strategy s, StepLimits limits) {
  Distr frontier;
  Distr absorbed;
  start(m, frontier, absorbed);
  for (unsigned i = 0; i < n && !frontier.empty(); ++i) advance(frontier, absorbed, s, limits);
  return absorbed;
}

EvalResult hInfLower(const Term& m, unsigned n, StepLimits limits) {
  EvalResult r{stepN(m, n, Strategy::Head, limits), {}};
  r.deficit = Dyadic(1) - r.distr.mass();
  return r;
}

StepTree traceTree(const Term& m, unsigned n, Strategy s, std::size_t maxNodes) {
  std::size_t nodes = 1;
  std::function<void(StepTree&, unsigned)> grow = [&](StepTree& node, unsigned left) {
    if (left == 0 || isHnf(node.term)) return;
    for (auto& o : step(node.term, s)) {
      if (++nodes > maxNodes) {
        throw ResourceError("leaves", "trace tree exceeds " + std::to_string(maxNodes) + " nodes");
      }
      node.children.push_back({o.prob, std::move(o.successor), {}});
      grow(node.children.back(), left - 1);
    }
  };
  StepTree root{Dyadic(1), m, {}};
  grow(root, n);
  return root;
}

bool DivergenceOracle::certifiedDivergent(const Term& m) {
  auto it = memo_.find(m);
  if (it != memo_.end()) return it->second;
  std::unordered_map<Term, bool, TermHash> seen;
  std::deque<Term> queue{m};
  seen.emplace(m, true);
  bool result = true;
  while (!queue.empty()) {
    Term t = std::move(queue.front());
    queue.pop_front();
    if (isHnf(t) || t.size() > limits_.maxTermSize) {
      result = false;
      break;
    }
    for (auto& o : headStep(t)) {
      if (seen.emplace(o.successor, true).second) {
        if (seen.size() > limits_.maxStates) {
          result = false;
          break;
        }
        queue.push_back(std::move(o.successor));
      }
    }
    if (!result) break;
  }
  // Every state of a closed divergent graph diverges too.
  if (result) {
    for (const auto& [t, unused] : seen) memo_[t] = true;
  } else {
    memo_[m] = false;
  }
  return result;
}

MassBounds convergenceBounds(const Term& m, unsigned steps, DivergenceOracle& oracle,
                             StepLimits limits) {
  Distr frontier;
  Distr absorbed;
  start(m, frontier, absorbed);
  for (unsigned i = 0; i < steps && !frontier.empty(); ++i) {
    advance(frontier, absorbed, Strategy::Head, limits);
  }
  Dyadic live;
  for (const auto& [t, w] : frontier) {
    if (!oracle.certifiedDivergent(t)) live += w;
  }
  MassBounds b{std::move(absorbed), {}};
  b.upperMass = b.lower.mass() + live;
  return b;
}

namespace {

// Successor of a genuine reduction step taken with probability 1, if any.
std::optional<Term> certainStep(const Term& t) {
  if (isHnf(t)) return std::nullopt;
  auto out = headStep(t);
  if (out.size() != 1) return std::nullopt;
  return out.front().successor;
}

std::optional<Term> certainPath(const Term& t, unsigned n) {
  Term cur = t;
  for (unsigned i = 0; i < n; ++i) {
    auto nx = certainStep(cur);
    if (!nx) return std::nullopt;
    cur = *nx;
  }
  return cur;
}

// Probability of standing at `target` after exactly k head steps from m, with
// head normal forms absorbing.
Dyadic reachProbability(const Term& m, unsigned k, const Term& target) {
  Distr layer;
  layer.add(m, Dyadic(1));
  for (unsigned i = 0; i < k; ++i) {
    Distr next;
    for (const auto& [t, q] : layer) {
      for (const auto& o : headStep(t)) next.add(o.successor, q * o.prob);
    }
    layer = std::move(next);
  }
  return layer.weight(target);
}

}  // namespace

std::optional<CommutationWitness> commutationWitness(const Term& m, const Term& mPrime,
                                                     const Dyadic& p, unsigned bound) {
  for (unsigned n0 = 0; n0 <= bound; ++n0) {
    auto meet = certainPath(mPrime, n0);
    if (!meet) return std::nullopt;
    if (reachProbability(m, n0 + 1, *meet) >= p) return CommutationWitness{n0, *meet};
  }
  return std::nullopt;
}

bool replayCommutation(const Term& m, const Term& mPrime, const Dyadic& p,
                       const CommutationWitness& w) {
  auto meet = certainPath(mPrime, w.n0);
  return meet && *meet == w.meet && reachProbability(m, w.n0 + 1, w.meet) >= p;
}

}  // namespace plam
