// Shared helpers for the test binaries.
#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "plam/distr.hpp"
#include "plam/generate.hpp"
#include "plam/term.hpp"

namespace testing {

inline plam::Term P(const std::string& s) { return plam::parse(s); }

inline plam::Dyadic Q(const std::string& s) { return plam::Dyadic::parse(s); }

inline plam::Distr D(std::initializer_list<std::pair<const char*, const char*>> entries) {
  plam::Distr d;
  for (const auto& [t, p] : entries) d.add(plam::parse(t), plam::Dyadic::parse(p));
  return d;
}

// 600 distinct closed terms of size at most 12.
inline const std::vector<plam::Term>& closedCorpus() {
  static const std::vector<plam::Term> c = plam::corpus(20261019, 600);
  return c;
}

// 600 distinct terms over the free names y and z.
inline const std::vector<plam::Term>& openCorpus() {
  static const std::vector<plam::Term> c = [] {
    plam::GenOptions o;
    o.freeNames = {"y", "z"};
    return plam::corpus(99, 600, o);
  }();
  return c;
}

}  // namespace testing
