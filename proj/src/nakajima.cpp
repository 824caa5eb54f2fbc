#include "plam/nakajima.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace plam {

std::string binderName(unsigned depth, unsigned position) {
  return "#" + std::to_string(depth) + "." + std::to_string(position);
}

bool isBinderName(const std::string& name) { return !name.empty() && name[0] == '#'; }

std::string displayName(const std::string& name) {
  if (!isBinderName(name)) return name;
  static const char* letters[] = {"x", "z", "w", "v", "u", "s", "r", "q", "p"};
  auto dot = name.find('.');
  unsigned depth = static_cast<unsigned>(std::stoul(name.substr(1, dot - 1)));
  std::string pos = name.substr(dot + 1);
  if (depth < std::size(letters)) return letters[depth] + pos;
  return "x" + std::to_string(depth) + "_" + pos;
}

ProbTree ValueTree::child(unsigned i) const {
  if (i <= args.size()) return args[i - 1];
  auto position = static_cast<unsigned>(offset() + static_cast<int>(i));
  return etaTree(binderName(depth, position), level - 1, depth + 1);
}

Dyadic ProbTree::mass() const {
  Dyadic m;
  for (const auto& [t, w] : weights) m += w;
  return m;
}

Dyadic ProbTree::weight(const ValueTree& t) const {
  for (const auto& [k, w] : weights) {
    if (k == t) return w;
  }
  return Dyadic();
}

bool ProbTree::exact() const {
  if (!deficit.isZero()) return false;
  for (const auto& [t, w] : weights) {
    for (const auto& a : t.args) {
      if (!a.exact()) return false;
    }
  }
  return true;
}

Dyadic ProbTree::uncertainty() const {
  Dyadic u = deficit;
  for (const auto& [t, w] : weights) {
    Dyadic worst;
    for (const auto& a : t.args) worst = std::max(worst, a.uncertainty());
    u += w * worst;
  }
  return u;
}

int compareValueTrees(const ValueTree& a, const ValueTree& b) {
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  if (a.binders != b.binders) return a.binders < b.binders ? -1 : 1;
  if (int c = a.head.compare(b.head); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (int c = compareProbTrees(a.args[i], b.args[i]); c != 0) return c;
  }
  return 0;
}

int compareProbTrees(const ProbTree& a, const ProbTree& b) {
  if (a.level != b.level) return a.level < b.level ? -1 : 1;
  if (a.deficit != b.deficit) return a.deficit < b.deficit ? -1 : 1;
  if (a.weights.size() != b.weights.size()) return a.weights.size() < b.weights.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.weights.size(); ++i) {
    if (int c = compareValueTrees(a.weights[i].first, b.weights[i].first); c != 0) return c;
    if (a.weights[i].second != b.weights[i].second) {
      return a.weights[i].second < b.weights[i].second ? -1 : 1;
    }
  }
  return 0;
}

namespace {

struct VtLess {
  bool operator()(const ValueTree& a, const ValueTree& b) const { return compareValueTrees(a, b) < 0; }
};

ProbTree fromMap(unsigned level, std::map<ValueTree, Dyadic, VtLess> grouped, Dyadic deficit) {
  ProbTree pt;
  pt.level = level;
  pt.deficit = std::move(deficit);
  for (auto& [t, w] : grouped) pt.weights.emplace_back(t, w);
  return pt;
}

}  // namespace

ProbTree etaTree(const std::string& var, unsigned level, unsigned depth) {
  ProbTree pt;
  pt.level = level;
  if (level == 0) return pt;
  ValueTree vt;
  vt.level = level;
  vt.depth = depth;
  vt.head = var;
  pt.weights.emplace_back(std::move(vt), Dyadic(1));
  return pt;
}

ProbTree TreeBuilder::probTree(const Term& m, unsigned level, unsigned depth) {
  if (level == 0) return ProbTree{};
  const Distr& d = eval_.eval(m, fuel_);
  std::map<ValueTree, Dyadic, VtLess> grouped;
  for (const auto& [h, w] : d) grouped[valueTree(h, level, depth)] += w;
  return fromMap(level, std::move(grouped), Dyadic(1) - d.mass());
}

ValueTree TreeBuilder::valueTree(const Term& hnf, unsigned level, unsigned depth) {
  auto c = classify(hnf);
  if (!std::holds_alternative<HnfView>(c)) {
    throw std::invalid_argument("valueTree of a term that is not a head normal form: " + print(hnf));
  }
  return valueTree(std::get<HnfView>(c), level, depth);
}

ValueTree TreeBuilder::valueTree(const HnfView& h, unsigned level, unsigned depth) {
  if (level == 0) throw std::invalid_argument("value trees start at level 1");
  const unsigned n = h.binders;
  // Index k inside the binders is the binder at position n - k.
  std::vector<Term> names;
  names.reserve(n);
  for (unsigned k = 0; k < n; ++k) names.push_back(Term::free(binderName(depth, n - k)));

  ValueTree vt;
  vt.level = level;
  vt.depth = depth;
  unsigned headPosition = 0;
  if (h.head.isBound()) {
    if (h.head.index() >= n) {
      throw std::invalid_argument("valueTree of an hnf with a dangling bound head");
    }
    headPosition = n - h.head.index();
    vt.head = binderName(depth, headPosition);
  } else {
    vt.head = h.head.name();
  }

  if (level == 1) {
    vt.binders = headPosition;
    return vt;
  }

  vt.binders = n;
  for (const auto& a : h.args) vt.args.push_back(probTree(instantiateAll(a, names), level - 1, depth + 1));
  while (vt.binders > 0 && !vt.args.empty()) {
    std::string last = binderName(depth, vt.binders);
    if (vt.head == last || !(vt.args.back() == etaTree(last, level - 1, depth + 1))) break;
    vt.args.pop_back();
    --vt.binders;
  }
  return vt;
}

ProbTree probTree(const Term& m, unsigned level, unsigned fuel) {
  TreeBuilder b(fuel);
  return b.probTree(m, level);
}

ValueTree valueTree(const HnfView& h, unsigned level, unsigned fuel) {
  TreeBuilder b(fuel);
  return b.valueTree(h, level);
}

// ---------------------------------------------------------------------------
// Comparison

namespace {

TreeVerdict compare(const ProbTree& a, const ProbTree& b, std::vector<unsigned> path);

// First child index (1-based) at which two value trees certainly differ; 0 if
// the heads differ; nullopt if no difference is certified.
std::optional<unsigned> firstDifference(const ValueTree& a, const ValueTree& b) {
  if (a.head != b.head) return 0u;
  if (a.level == 1) return std::nullopt;
  // Past this index both children come from the eta tails; with equal offsets
  // they coincide, and with different offsets they name different binders.
  auto last = static_cast<unsigned>(std::max(a.args.size(), b.args.size()) + 1);
  for (unsigned i = 1; i <= last; ++i) {
    if (compare(a.child(i), b.child(i), {}).kind == TreeVerdictKind::Different) return i;
  }
  return std::nullopt;
}

std::size_t findRoot(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

TreeVerdict compare(const ProbTree& a, const ProbTree& b, std::vector<unsigned> path) {
  if (a.level != b.level) throw std::invalid_argument("treeEq on trees of different levels");
  TreeVerdict v;
  if (a.level == 0) {
    v.kind = TreeVerdictKind::Equal;
    return v;
  }
  const bool exact = a.exact() && b.exact();
  if (exact && a == b) {
    v.kind = TreeVerdictKind::Equal;
    return v;
  }

  // Keys that are not certainly different share a block. The true mass each
  // side puts on a block lies between its materialized weight there and that
  // weight plus the side's deficit.
  std::vector<ValueTree> keys;
  for (const auto& [t, w] : a.weights) keys.push_back(t);
  for (const auto& [t, w] : b.weights) {
    if (a.weight(t).isZero()) keys.push_back(t);
  }
  std::vector<std::size_t> parent(keys.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      if (findRoot(parent, i) == findRoot(parent, j)) continue;
      if (exact || firstDifference(keys[i], keys[j]).has_value()) continue;
      parent[findRoot(parent, i)] = findRoot(parent, j);
    }
  }
  std::map<std::size_t, std::pair<Dyadic, Dyadic>> blocks;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto& [la, lb] = blocks[findRoot(parent, i)];
    la += a.weight(keys[i]);
    lb += b.weight(keys[i]);
  }
  for (const auto& [root, masses] : blocks) {
    const auto& [la, lb] = masses;
    if (la > lb + b.deficit || lb > la + a.deficit) {
      v.kind = TreeVerdictKind::Different;
      v.path = path;
      v.leftWeight = la;
      v.rightWeight = lb;
      // A single tree on each side with the same weight: the difference lies
      // below, so follow it to the first child that separates.
      if (a.weights.size() == 1 && b.weights.size() == 1 &&
          a.weights[0].second == b.weights[0].second) {
        auto idx = firstDifference(a.weights[0].first, b.weights[0].first);
        if (idx && *idx > 0) {
          path.push_back(*idx);
          return compare(a.weights[0].first.child(*idx), b.weights[0].first.child(*idx), path);
        }
      }
      return v;
    }
  }
  v.kind = TreeVerdictKind::Unknown;
  v.path = path;
  v.bound = a.deficit + b.deficit;
  if (v.bound.isZero()) v.bound = a.uncertainty() + b.uncertainty();
  return v;
}

}  // namespace

TreeVerdict treeEq(const ProbTree& a, const ProbTree& b) { return compare(a, b, {}); }

bool certainlyDifferent(const ValueTree& a, const ValueTree& b) {
  if (a.level != b.level) throw std::invalid_argument("comparing value trees of different levels");
  return firstDifference(a, b).has_value();
}

}  // namespace plam
