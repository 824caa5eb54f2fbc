// Finitely supported subprobability distributions with exact dyadic weights.
#pragma once

#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plam/dyadic.hpp"
#include "plam/term.hpp"

namespace plam {

class MassOverflow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A finite map from keys to strictly positive weights. Keys are merged with
// the key type's equality, which for terms is alpha-equivalence.
template <class Key, class Hash = std::hash<Key>>
class WeightMap {
 public:
  using Map = std::unordered_map<Key, Dyadic, Hash>;

  WeightMap() = default;
  WeightMap(std::initializer_list<std::pair<Key, Dyadic>> init) {
    for (const auto& [k, w] : init) add(k, w);
  }

  void add(const Key& k, const Dyadic& w) {
    if (w.isZero()) return;
    auto [it, inserted] = weights_.try_emplace(k, w);
    if (!inserted) it->second += w;
  }

  Dyadic weight(const Key& k) const {
    auto it = weights_.find(k);
    return it == weights_.end() ? Dyadic() : it->second;
  }

  bool contains(const Key& k) const { return weights_.count(k) > 0; }

  Dyadic mass() const {
    Dyadic m;
    for (const auto& [k, w] : weights_) m += w;
    return m;
  }

  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  typename Map::const_iterator begin() const { return weights_.begin(); }
  typename Map::const_iterator end() const { return weights_.end(); }

  friend bool operator==(const WeightMap& a, const WeightMap& b) { return a.weights_ == b.weights_; }
  friend bool operator!=(const WeightMap& a, const WeightMap& b) { return !(a == b); }

 private:
  Map weights_;
};

using Distr = WeightMap<Term, TermHash>;

Distr scale(const Dyadic& q, const Distr& d);
// Throws MassOverflow when the result would exceed mass 1.
Distr add(const Distr& d, const Distr& e);
inline Dyadic mass(const Distr& d) { return d.mass(); }
bool leqD(const Distr& d, const Distr& e);
Distr abstractLam(const Distr& d, const std::string& hint = "x");
Dyadic restrict(const Distr& d, const std::function<bool(const Term&)>& pred);

// Support entries ordered by their printed form, for stable output.
std::vector<std::pair<Term, Dyadic>> sortedEntries(const Distr& d);

}  // namespace plam
