#include "plam/distr.hpp"

#include <algorithm>

namespace plam {

Distr scale(const Dyadic& q, const Distr& d) {
  Distr out;
  if (q.isZero()) return out;
  for (const auto& [t, w] : d) out.add(t, q * w);
  return out;
}

Distr add(const Distr& d, const Distr& e) {
  Distr out = d;
  for (const auto& [t, w] : e) out.add(t, w);
  if (out.mass() > Dyadic(1)) throw MassOverflow("distribution mass exceeds 1");
  return out;
}

bool leqD(const Distr& d, const Distr& e) {
  for (const auto& [t, w] : d) {
    if (w > e.weight(t)) return false;
  }
  return true;
}

Distr abstractLam(const Distr& d, const std::string& hint) {
  Distr out;
  for (const auto& [t, w] : d) out.add(Term::lam(t, hint), w);
  return out;
}

Dyadic restrict(const Distr& d, const std::function<bool(const Term&)>& pred) {
  Dyadic m;
  for (const auto& [t, w] : d) {
    if (pred(t)) m += w;
  }
  return m;
}

std::vector<std::pair<Term, Dyadic>> sortedEntries(const Distr& d) {
  std::vector<std::pair<std::string, std::pair<Term, Dyadic>>> keyed;
  keyed.reserve(d.size());
  for (const auto& [t, w] : d) keyed.push_back({print(t), {t, w}});
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Term, Dyadic>> out;
  out.reserve(keyed.size());
  for (auto& k : keyed) out.push_back(std::move(k.second));
  return out;
}

}  // namespace plam
