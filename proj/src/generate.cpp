#include "plam/generate.hpp"

#include <stdexcept>
#include <unordered_set>

namespace plam {

namespace {

const char* const kHints[] = {"x", "y", "z", "u", "v", "w"};

}  // namespace

TermGenerator::TermGenerator(std::uint64_t seed, GenOptions options)
    : options_(std::move(options)), rng_(seed) {
  for (const char* name : {"I", "T", "F", "Delta", "Omega"}) constants_.push_back(constant(name));
}

unsigned TermGenerator::below(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }

bool TermGenerator::buildable(unsigned size, unsigned depth) const {
  if (size == 0) return false;
  if (depth > 0 || !options_.freeNames.empty()) return true;
  // A closed term of size 1 would be a bare variable; size 3 and 4 closed
  // terms exist only under a binder, which the lambda branch provides.
  return size >= 2;
}

Term TermGenerator::next() {
  unsigned lo = options_.freeNames.empty() ? 2 : 1;
  if (options_.maxSize < lo) throw std::invalid_argument("maxSize too small for the requested terms");
  return ofSize(lo + below(options_.maxSize - lo + 1));
}

Term TermGenerator::ofSize(unsigned size) {
  if (!buildable(size, 0)) throw std::invalid_argument("no term of that size");
  return gen(size, 0);
}

Term TermGenerator::gen(unsigned size, unsigned depth) {
  std::vector<Term> fitting;
  for (const auto& c : constants_) {
    if (c.size() == size) fitting.push_back(c);
  }
  if (!fitting.empty() && std::bernoulli_distribution(options_.constantRate)(rng_)) {
    return fitting[below(static_cast<unsigned>(fitting.size()))];
  }
  if (size == 1) {
    unsigned choices = depth + static_cast<unsigned>(options_.freeNames.size());
    unsigned k = below(choices);
    if (k < depth) return Term::bound(k);
    return Term::free(options_.freeNames[k - depth]);
  }
  // Candidate shapes: 0 = abstraction, 1 = application, 2 = choice; binary
  // shapes need both parts buildable at the current depth.
  std::vector<int> shapes{0};
  if (size >= 3) {
    for (unsigned left = 1; left + 1 < size; ++left) {
      if (buildable(left, depth) && buildable(size - 1 - left, depth)) {
        shapes.push_back(1);
        shapes.push_back(2);
        break;
      }
    }
  }
  int shape = shapes[below(static_cast<unsigned>(shapes.size()))];
  if (shape == 0) return Term::lam(gen(size - 1, depth + 1), kHints[depth % std::size(kHints)]);
  std::vector<unsigned> splits;
  for (unsigned left = 1; left + 1 < size; ++left) {
    if (buildable(left, depth) && buildable(size - 1 - left, depth)) splits.push_back(left);
  }
  unsigned left = splits[below(static_cast<unsigned>(splits.size()))];
  Term a = gen(left, depth);
  Term b = gen(size - 1 - left, depth);
  return shape == 1 ? Term::app(a, b) : Term::choice(a, b);
}

std::vector<Term> corpus(std::uint64_t seed, std::size_t count, GenOptions options) {
  TermGenerator g(seed, std::move(options));
  std::vector<Term> out;
  std::unordered_set<Term, TermHash> seen;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 100 * count + 1000) throw std::runtime_error("could not generate enough distinct terms");
    Term t = g.next();
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

}  // namespace plam
