#include "plam/bigstep.hpp"

namespace plam {

const Distr& Evaluator::eval(const Term& m, unsigned fuel) {
  Key key{m, fuel};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  if (memo_.size() >= limits_.maxCalls) {
    throw ResourceError("eval-calls", "more than " + std::to_string(limits_.maxCalls) +
                                          " distinct evaluations");
  }
  Distr d = compute(m, fuel);
  return memo_.emplace(std::move(key), std::move(d)).first->second;
}

Distr Evaluator::compute(const Term& m, unsigned fuel) {
  switch (m.kind()) {
    case TermKind::Bound:
    case TermKind::Free:
      return Distr{{m, Dyadic(1)}};
    case TermKind::Lam:
      return abstractLam(eval(m.body(), fuel), m.name());
    case TermKind::Choice: {
      Distr out = scale(Dyadic::half(), eval(m.left(), fuel));
      for (const auto& [h, w] : eval(m.right(), fuel)) out.add(h, w.halved());
      return out;
    }
    case TermKind::App:
      break;
  }

  // References into the cache stay valid while it grows.
  const Distr& fun = eval(m.fun(), fuel);
  Distr out;
  for (const auto& [h, w] : fun) {
    if (!h.isLam()) {
      out.add(Term::app(h, m.arg()), w);
      continue;
    }
    if (fuel == 0) continue;
    Term next = instantiate(h.body(), m.arg());
    if (next.size() > limits_.maxTermSize) {
      throw ResourceError("term-size", "substituted body of size " + std::to_string(next.size()));
    }
    for (const auto& [h2, w2] : eval(next, fuel - 1)) out.add(h2, w * w2);
  }
  return out;
}

EvalResult Evaluator::evalFuel(const Term& m, unsigned fuel) {
  EvalResult r{eval(m, fuel), {}};
  r.deficit = Dyadic(1) - r.distr.mass();
  return r;
}

EvalResult evalFuel(const Term& m, unsigned fuel, EvalLimits limits) {
  Evaluator ev(limits);
  return ev.evalFuel(m, fuel);
}

Dyadic evalMass(const Term& m, unsigned fuel, EvalLimits limits) {
  return evalFuel(m, fuel, limits).distr.mass();
}

Derivability checkBigStepDerivable(const Term& m, const Distr& d, unsigned fuelCap,
                                   EvalLimits limits) {
  Evaluator ev(limits);
  for (unsigned f = 0; f <= fuelCap; ++f) {
    if (leqD(d, ev.eval(m, f))) return Derivability::Derivable;
  }
  return Derivability::Unknown;
}

}  // namespace plam
