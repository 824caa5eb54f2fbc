#include "oracle.hpp"

#include <functional>
#include <stdexcept>

namespace oracle {

NTerm var(const std::string& x) { return std::make_shared<Node>(Node{Node::Var, x, nullptr, nullptr}); }
NTerm lam(const std::string& x, NTerm body) {
  return std::make_shared<Node>(Node{Node::Lam, x, std::move(body), nullptr});
}
NTerm app(NTerm f, NTerm a) { return std::make_shared<Node>(Node{Node::App, "", std::move(f), std::move(a)}); }
NTerm choice(NTerm l, NTerm r) {
  return std::make_shared<Node>(Node{Node::Choice, "", std::move(l), std::move(r)});
}

namespace {

std::string fresh() {
  static unsigned counter = 0;
  return "v" + std::to_string(counter++);
}

NTerm from(const plam::Term& t, std::vector<std::string>& scope) {
  switch (t.kind()) {
    case plam::TermKind::Bound:
      if (t.index() >= scope.size()) throw std::invalid_argument("dangling index");
      return var(scope[scope.size() - 1 - t.index()]);
    case plam::TermKind::Free:
      return var(t.name());
    case plam::TermKind::Lam: {
      std::string x = fresh();
      scope.push_back(x);
      NTerm body = from(t.body(), scope);
      scope.pop_back();
      return lam(x, body);
    }
    case plam::TermKind::App:
      return app(from(t.fun(), scope), from(t.arg(), scope));
    case plam::TermKind::Choice:
      return choice(from(t.left(), scope), from(t.right(), scope));
  }
  throw std::logic_error("unknown kind");
}

}  // namespace

NTerm fromTerm(const plam::Term& t) {
  std::vector<std::string> scope;
  return from(t, scope);
}

std::string show(const NTerm& t) {
  switch (t->kind) {
    case Node::Var: return t->name;
    case Node::Lam: return "(\\" + t->name + "." + show(t->a) + ")";
    case Node::App: return "(" + show(t->a) + " " + show(t->b) + ")";
    case Node::Choice: return "(" + show(t->a) + " (+) " + show(t->b) + ")";
  }
  return "";
}

plam::Term toTerm(const NTerm& t) { return plam::parse(show(t)); }

std::set<std::string> freeVars(const NTerm& t) {
  switch (t->kind) {
    case Node::Var: return {t->name};
    case Node::Lam: {
      auto s = freeVars(t->a);
      s.erase(t->name);
      return s;
    }
    default: {
      auto s = freeVars(t->a);
      auto u = freeVars(t->b);
      s.insert(u.begin(), u.end());
      return s;
    }
  }
}

NTerm subst(const NTerm& m, const std::string& x, const NTerm& n) {
  switch (m->kind) {
    case Node::Var: return m->name == x ? n : m;
    case Node::App: return app(subst(m->a, x, n), subst(m->b, x, n));
    case Node::Choice: return choice(subst(m->a, x, n), subst(m->b, x, n));
    case Node::Lam: {
      if (m->name == x) return m;
      if (freeVars(n).count(m->name)) {
        std::string y = fresh();
        return lam(y, subst(subst(m->a, m->name, var(y)), x, n));
      }
      return lam(m->name, subst(m->a, x, n));
    }
  }
  return m;
}

plam::Distr toDistr(const Dist& d) {
  plam::Distr out;
  for (const auto& [t, p] : d) out.add(toTerm(t), plam::Dyadic::parse(p.get_str()));
  return out;
}

Dist eval(const NTerm& m, unsigned fuel) {
  switch (m->kind) {
    case Node::Var: return {{m, 1}};
    case Node::Lam: {
      Dist out;
      for (const auto& [h, p] : eval(m->a, fuel)) out.emplace_back(lam(m->name, h), p);
      return out;
    }
    case Node::Choice: {
      Dist out;
      for (const auto& [h, p] : eval(m->a, fuel)) out.emplace_back(h, p / 2);
      for (const auto& [h, p] : eval(m->b, fuel)) out.emplace_back(h, p / 2);
      return out;
    }
    case Node::App: {
      Dist out;
      for (const auto& [h, p] : eval(m->a, fuel)) {
        if (h->kind == Node::Lam) {
          if (fuel == 0) continue;
          for (const auto& [g, q] : eval(subst(h->a, h->name, m->b), fuel - 1)) out.emplace_back(g, p * q);
        } else {
          out.emplace_back(app(h, m->b), p);
        }
      }
      return out;
    }
  }
  return {};
}

namespace {

// Splits lambda x1..xn. h a1..ak into its binders, head and arguments.
struct Spine {
  std::vector<std::string> binders;
  NTerm head;
  std::vector<NTerm> args;
};

Spine spine(NTerm t) {
  Spine s;
  while (t->kind == Node::Lam) {
    s.binders.push_back(t->name);
    t = t->a;
  }
  while (t->kind == Node::App) {
    s.args.insert(s.args.begin(), t->b);
    t = t->a;
  }
  s.head = t;
  return s;
}

NTerm rebuild(const std::vector<std::string>& binders, NTerm head, const std::vector<NTerm>& args,
              std::size_t from) {
  for (std::size_t i = from; i < args.size(); ++i) head = app(head, args[i]);
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) head = lam(*it, head);
  return head;
}

}  // namespace

bool isHnf(const NTerm& t) { return spine(t).head->kind == Node::Var; }

std::optional<std::vector<std::pair<mpq_class, NTerm>>> headStep(const NTerm& t) {
  Spine s = spine(t);
  if (s.head->kind == Node::Var) return std::nullopt;
  if (s.head->kind == Node::Choice) {
    return std::vector<std::pair<mpq_class, NTerm>>{
        {mpq_class(1, 2), rebuild(s.binders, s.head->a, s.args, 0)},
        {mpq_class(1, 2), rebuild(s.binders, s.head->b, s.args, 0)}};
  }
  // The head is an abstraction applied to at least one argument.
  NTerm reduct = subst(s.head->a, s.head->name, s.args.at(0));
  return std::vector<std::pair<mpq_class, NTerm>>{{mpq_class(1), rebuild(s.binders, reduct, s.args, 1)}};
}

Dist headPaths(const NTerm& m, unsigned n) {
  auto next = headStep(m);
  if (!next) return {{m, 1}};
  if (n == 0) return {};
  Dist out;
  for (const auto& [p, t] : *next) {
    for (const auto& [h, q] : headPaths(t, n - 1)) out.emplace_back(h, p * q);
  }
  return out;
}

bool assignmentFeasible(const std::vector<mpq_class>& p, const std::map<unsigned, mpq_class>& r,
                        unsigned denominator) {
  auto units = [&](const mpq_class& q) {
    mpq_class scaled = q * denominator;
    scaled.canonicalize();
    if (scaled.get_den() != 1) throw std::invalid_argument("value is not a multiple of the unit");
    return static_cast<long>(scaled.get_num().get_si());
  };
  std::vector<unsigned> subsets;
  std::vector<long> capacity;
  for (const auto& [s, m] : r) {
    subsets.push_back(s);
    capacity.push_back(units(m));
  }
  std::vector<long> demand;
  for (const auto& q : p) demand.push_back(units(q));

  // Element by element, try every way of drawing its demand from the
  // subsets that contain it.
  std::function<bool(std::size_t)> place;
  std::function<bool(std::size_t, std::size_t, long)> split = [&](std::size_t element, std::size_t k,
                                                                  long remaining) -> bool {
    if (remaining == 0) return place(element + 1);
    if (k == subsets.size()) return false;
    if (!((subsets[k] >> element) & 1U)) return split(element, k + 1, remaining);
    long most = std::min(remaining, capacity[k]);
    for (long take = most; take >= 0; --take) {
      capacity[k] -= take;
      bool ok = split(element, k + 1, remaining - take);
      capacity[k] += take;
      if (ok) return true;
    }
    return false;
  };
  place = [&](std::size_t element) -> bool {
    if (element == demand.size()) return true;
    return split(element, 0, demand[element]);
  };
  return place(0);
}

}  // namespace oracle
