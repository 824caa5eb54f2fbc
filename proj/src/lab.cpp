#include "plam/lab.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace plam {

MarkovState MarkovState::termState(Term closed) { return MarkovState(false, std::move(closed)); }
MarkovState MarkovState::hnfState(Term body) { return MarkovState(true, std::move(body)); }

Term MarkovState::closed() const { return hnf_ ? Term::lam(t_, "x") : t_; }

std::string MarkovState::toString() const {
  if (!hnf_) return print(t_);
  std::string name = "x";
  auto fv = freeVars(t_);
  while (fv.count(name)) name += "'";
  return "nu " + name + "." + print(instantiate(t_, Term::free(name)));
}

std::string TransitionLabel::toString() const { return isTau() ? "tau" : print(*arg_); }

StateDistr transitions(const MarkovState& s, const TransitionLabel& label, unsigned fuel) {
  StateDistr out;
  if (s.isTerm() && label.isTau()) {
    for (const auto& [h, w] : evalFuel(s.term(), fuel).distr) {
      if (!h.isLam()) throw std::invalid_argument("transitions from an open term state");
      out.add(MarkovState::hnfState(h.body()), w);
    }
  } else if (s.isHnf() && !label.isTau()) {
    out.add(MarkovState::termState(instantiate(s.term(), label.argument())), Dyadic(1));
  }
  return out;
}

Term closeOver(const Term& m, const std::vector<std::string>& names) {
  Term t = m;
  for (auto it = names.rbegin(); it != names.rend(); ++it) t = abstractFree(t, *it);
  return t;
}

std::pair<Term, Term> closePair(const Term& m, const Term& n) {
  auto names = freeVars(m);
  auto more = freeVars(n);
  names.insert(more.begin(), more.end());
  std::vector<std::string> ordered(names.begin(), names.end());
  return {closeOver(m, ordered), closeOver(n, ordered)};
}

std::vector<Term> defaultPool() {
  return {constant("I"), constant("Omega"), constant("Delta"), constant("T"), constant("F")};
}

// ---------------------------------------------------------------------------
// Certificates

unsigned Certificate::depth() const {
  unsigned below = 0;
  for (const auto& c : children) below = std::max(below, c.depth());
  return 1 + below;
}

std::vector<TransitionLabel> Certificate::primaryLabels() const {
  std::vector<TransitionLabel> out{label};
  if (!children.empty()) {
    auto rest = children.front().primaryLabels();
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

const Certificate& Certificate::primaryLeaf() const {
  return children.empty() ? *this : children.front().primaryLeaf();
}

// ---------------------------------------------------------------------------
// Game solver

GameSolver::GameSolver(GameMode mode, GameOptions options)
    : mode_(mode),
      options_(std::move(options)),
      eval_(options_.eval),
      trees_(options_.fuel, options_.eval),
      divergence_(options_.divergence) {}

std::size_t GameSolver::idOf(const MarkovState& s) {
  return ids_.try_emplace(s, ids_.size()).first->second;
}

const GameSolver::Tau& GameSolver::tau(const MarkovState& s) {
  auto it = tauCache_.find(s);
  if (it != tauCache_.end()) return it->second;
  Tau t;
  if (s.isTerm()) {
    const Distr& d = eval_.eval(s.term(), options_.fuel);
    for (const auto& [h, w] : d) {
      if (!h.isLam()) throw std::invalid_argument("game state is not a closed term: " + print(s.term()));
      t.lower.add(MarkovState::hnfState(h.body()), w);
    }
    Dyadic lowerMass = d.mass();
    t.slack = Dyadic(1) - lowerMass;
    try {
      StepLimits limits{4096, 4096};
      MassBounds b = convergenceBounds(s.term(), options_.boundSteps, divergence_, limits);
      if (b.upperMass < lowerMass) {
        throw std::logic_error("upper bound below lower bound for " + print(s.term()));
      }
      t.slack = std::min(t.slack, b.upperMass - lowerMass);
    } catch (const ResourceError&) {
      // Reduction grew too large to bound; the evaluation deficit stands.
    }
    for (const auto& [st, w] : t.lower) t.sorted.emplace_back(st, w);
    std::sort(t.sorted.begin(), t.sorted.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return compareTerms(a.first.term(), b.first.term()) < 0;
    });
  }
  return tauCache_.emplace(s, std::move(t)).first->second;
}

bool GameSolver::treeSeparated(const MarkovState& a, const MarkovState& b) {
  auto vt = [&](const MarkovState& s) -> const ValueTree& {
    auto it = treeCache_.find(s);
    if (it != treeCache_.end()) return it->second;
    return treeCache_.emplace(s, trees_.valueTree(s.closed(), options_.treeLevel)).first->second;
  };
  const ValueTree& va = vt(a);
  const ValueTree& vb = vt(b);
  return certainlyDifferent(va, vb);
}

std::vector<std::vector<MarkovState>> GameSolver::blocks(const Tau& s, const Tau& t) {
  std::vector<MarkovState> states;
  for (const auto& [st, w] : s.sorted) states.push_back(st);
  for (const auto& [st, w] : t.sorted) {
    if (!s.lower.contains(st)) states.push_back(st);
  }
  std::vector<std::size_t> parent(states.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      if (root(i) != root(j) && !treeSeparated(states[i], states[j])) parent[root(i)] = root(j);
    }
  }
  std::vector<std::vector<MarkovState>> out;
  std::vector<std::size_t> slot(states.size(), SIZE_MAX);
  for (std::size_t i = 0; i < states.size(); ++i) {
    std::size_t r = root(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(states[i]);
  }
  return out;
}

namespace {

Dyadic massOn(const StateDistr& d, const std::vector<MarkovState>& block) {
  Dyadic m;
  for (const auto& s : block) m += d.weight(s);
  return m;
}

const std::vector<MarkovState>* blockOf(const std::vector<std::vector<MarkovState>>& blocks,
                                        const MarkovState& s) {
  for (const auto& b : blocks) {
    if (std::find(b.begin(), b.end(), s) != b.end()) return &b;
  }
  return nullptr;
}

}  // namespace

std::optional<Certificate> GameSolver::refute(const Term& m, const Term& n) {
  auto [cm, cn] = closePair(m, n);
  MarkovState s = MarkovState::termState(cm);
  MarkovState t = MarkovState::termState(cn);
  for (unsigned d = 1; d <= options_.depth; ++d) {
    if (auto c = refuteTerms(s, t, d)) return c;
  }
  return std::nullopt;
}

std::optional<Certificate> GameSolver::refuteTerms(const MarkovState& s, const MarkovState& t,
                                                   unsigned d) {
  if (d == 0 || s == t) return std::nullopt;
  auto key = std::make_tuple(idOf(s), idOf(t), d);
  if (failed_.count(key)) return std::nullopt;
  const Tau& ts = tau(s);
  const Tau& tt = tau(t);

  Certificate c;
  c.left = s;
  c.right = t;
  if (mode_ == GameMode::Simulation) {
    Dyadic lower = ts.lower.mass();
    Dyadic upper = tt.lower.mass() + tt.slack;
    if (lower > upper) {
      c.rule = GameRule::TotalMass;
      c.lower = lower;
      c.upper = upper;
      return c;
    }
    if (auto f = forced(s, t, ts, tt, false, d)) return f;
  } else {
    for (const auto& block : blocks(ts, tt)) {
      Dyadic ls = massOn(ts.lower, block);
      Dyadic lt = massOn(tt.lower, block);
      bool leftHeavy = ls > lt + tt.slack;
      bool rightHeavy = lt > ls + ts.slack;
      if (leftHeavy || rightHeavy) {
        c.rule = GameRule::BlockMass;
        c.pivot = block.front();
        c.pivotOnRight = rightHeavy && !leftHeavy;
        c.lower = c.pivotOnRight ? lt : ls;
        c.upper = c.pivotOnRight ? ls + ts.slack : lt + tt.slack;
        return c;
      }
    }
    if (auto f = forced(s, t, ts, tt, false, d)) return f;
    if (auto f = forced(s, t, tt, ts, true, d)) return f;
  }
  failed_.insert(key);
  return std::nullopt;
}

std::optional<Certificate> GameSolver::forced(const MarkovState& s, const MarkovState& t,
                                              const Tau& heavy, const Tau& light, bool onRight,
                                              unsigned d) {
  // tau, then an argument, then at least one more tau below.
  if (d < 3) return std::nullopt;
  std::vector<std::vector<MarkovState>> bl;
  if (mode_ == GameMode::Bisimulation) bl = onRight ? blocks(light, heavy) : blocks(heavy, light);

  for (const auto& [a, wa] : heavy.sorted) {
    if (wa <= light.slack) break;  // sorted heaviest first: no later pivot can win either
    std::vector<std::pair<MarkovState, Dyadic>> candidates;
    const auto* blk = mode_ == GameMode::Bisimulation ? blockOf(bl, a) : nullptr;
    for (const auto& [b, wb] : light.sorted) {
      if (blk != nullptr && std::find(blk->begin(), blk->end(), b) == blk->end()) continue;
      candidates.emplace_back(b, wb);
    }
    Dyadic unrefuted = light.slack;
    for (const auto& [b, wb] : candidates) unrefuted += wb;
    Dyadic refutable;
    for (const auto& [b, wb] : candidates) {
      if (b != a) refutable += wb;
    }
    if (unrefuted - refutable >= wa) continue;

    std::vector<Certificate> children;
    Dyadic remaining = refutable;
    for (const auto& [b, wb] : candidates) {
      if (wa > unrefuted) break;
      if (unrefuted - remaining >= wa) break;
      if (b != a) remaining -= wb;
      if (auto child = refuteHnfs(a, b, d - 1)) {
        unrefuted -= wb;
        children.push_back(std::move(*child));
      }
    }
    if (wa > unrefuted) {
      Certificate c;
      c.rule = GameRule::Forced;
      c.left = s;
      c.right = t;
      c.pivot = a;
      c.pivotOnRight = onRight;
      c.lower = wa;
      c.upper = unrefuted;
      c.children = std::move(children);
      return c;
    }
  }
  return std::nullopt;
}

std::optional<Certificate> GameSolver::refuteHnfs(const MarkovState& a, const MarkovState& b,
                                                  unsigned d) {
  if (d < 2 || a == b) return std::nullopt;
  auto key = std::make_tuple(idOf(a), idOf(b), d);
  if (failed_.count(key)) return std::nullopt;
  for (const auto& n : options_.pool) {
    MarkovState sa = MarkovState::termState(instantiate(a.term(), n));
    MarkovState sb = MarkovState::termState(instantiate(b.term(), n));
    if (auto child = refuteTerms(sa, sb, d - 1)) {
      Certificate c;
      c.rule = GameRule::Apply;
      c.left = a;
      c.right = b;
      c.label = TransitionLabel::apply(n);
      c.lower = child->lower;
      c.upper = child->upper;
      c.children.push_back(std::move(*child));
      return c;
    }
  }
  failed_.insert(key);
  return std::nullopt;
}

bool GameSolver::replay(const Certificate& c) {
  if (!c.left || !c.right) return false;
  const MarkovState& s = *c.left;
  const MarkovState& t = *c.right;

  if (c.rule == GameRule::Apply) {
    if (!s.isHnf() || !t.isHnf() || c.label.isTau() || !isClosed(c.label.argument())) return false;
    if (c.children.size() != 1) return false;
    const Certificate& child = c.children.front();
    if (!child.left || !child.right) return false;
    if (*child.left != MarkovState::termState(instantiate(s.term(), c.label.argument())) ||
        *child.right != MarkovState::termState(instantiate(t.term(), c.label.argument()))) {
      return false;
    }
    return c.lower == child.lower && c.upper == child.upper && replay(child);
  }

  if (!s.isTerm() || !t.isTerm() || !c.label.isTau() || s == t) return false;
  const Tau& ts = tau(s);
  const Tau& tt = tau(t);

  switch (c.rule) {
    case GameRule::TotalMass: {
      if (mode_ != GameMode::Simulation || !c.children.empty()) return false;
      Dyadic lower = ts.lower.mass();
      Dyadic upper = tt.lower.mass() + tt.slack;
      return c.lower == lower && c.upper == upper && lower > upper;
    }
    case GameRule::BlockMass: {
      if (mode_ != GameMode::Bisimulation || !c.pivot || !c.children.empty()) return false;
      auto bl = blocks(ts, tt);
      const auto* blk = blockOf(bl, *c.pivot);
      if (blk == nullptr) return false;
      Dyadic ls = massOn(ts.lower, *blk);
      Dyadic lt = massOn(tt.lower, *blk);
      Dyadic lower = c.pivotOnRight ? lt : ls;
      Dyadic upper = c.pivotOnRight ? ls + ts.slack : lt + tt.slack;
      return c.lower == lower && c.upper == upper && lower > upper;
    }
    case GameRule::Forced: {
      if (!c.pivot) return false;
      if (mode_ == GameMode::Simulation && c.pivotOnRight) return false;
      const Tau& heavy = c.pivotOnRight ? tt : ts;
      const Tau& light = c.pivotOnRight ? ts : tt;
      const MarkovState& a = *c.pivot;
      if (!heavy.lower.contains(a) || c.lower != heavy.lower.weight(a)) return false;
      std::vector<MarkovState> candidates;
      if (mode_ == GameMode::Bisimulation) {
        auto bl = c.pivotOnRight ? blocks(light, heavy) : blocks(heavy, light);
        for (const auto& b : *blockOf(bl, a)) {
          if (light.lower.contains(b)) candidates.push_back(b);
        }
      } else {
        for (const auto& [b, w] : light.sorted) candidates.push_back(b);
      }
      std::vector<MarkovState> refuted;
      for (const auto& child : c.children) {
        if (child.rule != GameRule::Apply || !child.left || !child.right) return false;
        if (*child.left != a) return false;
        const MarkovState& b = *child.right;
        if (std::find(candidates.begin(), candidates.end(), b) == candidates.end()) return false;
        if (std::find(refuted.begin(), refuted.end(), b) != refuted.end()) return false;
        if (!replay(child)) return false;
        refuted.push_back(b);
      }
      Dyadic upper = light.slack;
      for (const auto& b : candidates) {
        if (std::find(refuted.begin(), refuted.end(), b) == refuted.end()) upper += light.lower.weight(b);
      }
      return c.upper == upper && c.lower > upper;
    }
    case GameRule::Apply:
      break;
  }
  return false;
}

std::optional<Certificate> refuteBisim(const Term& m, const Term& n, const GameOptions& options) {
  GameSolver solver(GameMode::Bisimulation, options);
  return solver.refute(m, n);
}

std::optional<Certificate> refuteSim(const Term& m, const Term& n, const GameOptions& options) {
  GameSolver solver(GameMode::Simulation, options);
  return solver.refute(m, n);
}

bool replayCertificate(const Certificate& c, GameMode mode, const GameOptions& options) {
  GameSolver solver(mode, options);
  return solver.replay(c);
}

// ---------------------------------------------------------------------------
// Applicative comparison

std::vector<std::vector<Term>> allSequences(const std::vector<Term>& pool, unsigned maxLen) {
  std::vector<std::vector<Term>> out{{}};
  std::vector<std::vector<Term>> layer{{}};
  for (unsigned len = 1; len <= maxLen; ++len) {
    std::vector<std::vector<Term>> next;
    for (const auto& seq : layer) {
      for (const auto& p : pool) {
        auto s = seq;
        s.push_back(p);
        next.push_back(std::move(s));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<AppRow> applicativeCompare(const Term& m, const Term& n,
                                       const std::vector<std::vector<Term>>& argSeqs,
                                       const AppOptions& options) {
  auto [cm, cn] = closePair(m, n);
  Evaluator ev;
  DivergenceOracle oracle(options.divergence);
  auto bounds = [&](const Term& t) {
    Dyadic lower = ev.eval(t, options.fuel).mass();
    Dyadic slack = Dyadic(1) - lower;
    try {
      MassBounds b = convergenceBounds(t, options.boundSteps, oracle, StepLimits{4096, 4096});
      if (b.upperMass < lower) throw std::logic_error("upper bound below lower bound for " + print(t));
      slack = std::min(slack, b.upperMass - lower);
    } catch (const ResourceError&) {
      // Keep the evaluation deficit as the only slack.
    }
    return std::make_pair(lower, lower + slack);
  };
  std::vector<AppRow> rows;
  for (const auto& seq : argSeqs) {
    Term l = cm;
    Term r = cn;
    for (const auto& a : seq) {
      l = Term::app(l, a);
      r = Term::app(r, a);
    }
    AppRow row;
    row.args = seq;
    std::tie(row.leftLower, row.leftUpper) = bounds(l);
    std::tie(row.rightLower, row.rightUpper) = bounds(r);
    if (row.leftLower > row.rightUpper) {
      row.verdict = AppVerdict::LeftExceeds;
    } else if (row.rightLower > row.leftUpper) {
      row.verdict = AppVerdict::RightExceeds;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace plam
