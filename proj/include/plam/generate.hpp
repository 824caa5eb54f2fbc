// Seeded random terms for property testing.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plam/term.hpp"

namespace plam {

struct GenOptions {
  unsigned maxSize = 12;
  // Free names the generator may use; empty means closed terms only.
  std::vector<std::string> freeNames;
  // Chance of using a built-in constant when one fits the remaining size.
  double constantRate = 0.15;
};

class TermGenerator {
 public:
  TermGenerator(std::uint64_t seed, GenOptions options = {});

  // A term of size drawn uniformly from 1..maxSize (2..maxSize when closed).
  Term next();
  Term ofSize(unsigned size);
  std::mt19937_64& rng() { return rng_; }

 private:
  Term gen(unsigned size, unsigned depth);
  bool buildable(unsigned size, unsigned depth) const;
  unsigned below(unsigned n);

  GenOptions options_;
  std::mt19937_64 rng_;
  std::vector<Term> constants_;
};

// `count` pairwise distinct terms.
std::vector<Term> corpus(std::uint64_t seed, std::size_t count, GenOptions options = {});

}  // namespace plam
