#include <doctest.h>

#include "oracle.hpp"
#include "plam/bigstep.hpp"
#include "support.hpp"

using namespace plam;
using testing::D;
using testing::P;
using testing::Q;

namespace {

const char* const kM = "\\x.y (+) x x";

Term mm() { return Term::app(P(kM), P(kM)); }

Term applyAll(Term f, std::initializer_list<const char*> args) {
  for (const char* a : args) f = Term::app(f, P(a));
  return f;
}

}  // namespace

TEST_CASE("duplicator on a boolean choice") {
  Term m = P("Delta (T (+) F)");
  CHECK(evalFuel(m, 0).distr.empty());
  CHECK(evalFuel(m, 1).distr.empty());
  for (unsigned f = 2; f <= 10; ++f) {
    auto r = evalFuel(m, f);
    CHECK(r.distr == D({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}}));
    CHECK(r.deficit.isZero());
  }
}

TEST_CASE("Omega and the half identity") {
  for (unsigned f = 0; f <= 32; ++f) {
    auto r = evalFuel(constant("Omega"), f);
    CHECK(r.distr.empty());
    CHECK(r.deficit == Dyadic(1));
  }
  CHECK(evalFuel(P("Omega (+) I"), 3).distr == D({{"I", "1/2"}}));
  for (unsigned f = 1; f <= 6; ++f) CHECK(evalMass(constant("hid"), f) == Dyadic::half());
}

TEST_CASE("MM approaches y geometrically") {
  for (unsigned n = 1; n <= 12; ++n) {
    Distr want;
    want.add(Term::free("y"), Dyadic(1) - Dyadic::pow2inv(n));
    CHECK(evalFuel(mm(), n).distr == want);
  }
}

TEST_CASE("the two choice placements under Omega, I, Delta") {
  Term l = applyAll(P("\\x y z.z (x (+) y)"), {"Omega", "I", "Delta"});
  Term r = applyAll(P("\\x y z.z x (+) z y"), {"Omega", "I", "Delta"});
  for (unsigned f = 5; f <= 9; ++f) {
    CHECK(evalFuel(l, f).distr == D({{"I", "1/4"}}));
    CHECK(evalFuel(r, f).distr == D({{"I", "1/2"}}));
  }
}

TEST_CASE("fixed point of a choice") {
  auto r = evalFuel(P("Theta (\\f.y (+) y f)"), 4);
  CHECK(r.distr == D({{"y", "1/2"}, {"y (Theta (\\f.y (+) y f))", "1/2"}}));
}

TEST_CASE("call-by-name duplication context") {
  Term ctx = P("\\v.(v I Omega) (v I Omega)");
  CHECK(evalMass(Term::app(ctx, P("\\x y.x (+) y")), 12) == Q("1/4"));
}

TEST_CASE("derivability search") {
  CHECK(checkBigStepDerivable(P("Delta (T (+) F)"), D({{"I", "1/2"}}), 4) == Derivability::Derivable);
  CHECK(checkBigStepDerivable(P("Delta (T (+) F)"), Distr{}, 0) == Derivability::Derivable);
  CHECK(checkBigStepDerivable(constant("Omega"), D({{"I", "1/4"}}), 24) == Derivability::Unknown);
  CHECK(checkBigStepDerivable(P("Delta (T (+) F)"), D({{"I", "3/4"}}), 8) == Derivability::Unknown);
}

TEST_CASE("resource caps") {
  EvalLimits tight;
  tight.maxCalls = 8;
  CHECK_THROWS_AS(evalFuel(mm(), 12, tight), ResourceError);
  EvalLimits small;
  small.maxTermSize = 16;
  // Each unfolding of this term doubles the argument.
  CHECK_THROWS_AS(evalFuel(P("(\\x.x x x) (\\x.x x x)"), 6, small), ResourceError);
}

TEST_CASE("memoization is invisible") {
  Evaluator shared;
  for (const auto& t : testing::closedCorpus()) {
    for (unsigned f : {3u, 1u, 4u}) {
      CHECK(shared.evalFuel(t, f).distr == evalFuel(t, f).distr);
    }
  }
}

TEST_CASE("agreement with the literal rule oracle") {
  std::size_t compared = 0;
  for (const auto* corpus : {&testing::closedCorpus(), &testing::openCorpus()}) {
    for (std::size_t i = 0; i < corpus->size(); i += 2) {
      const Term& t = (*corpus)[i];
      CAPTURE(print(t));
      for (unsigned f = 0; f <= 3; ++f) {
        CHECK(evalFuel(t, f).distr == oracle::toDistr(oracle::eval(oracle::fromTerm(t), f)));
        ++compared;
      }
    }
  }
  for (const char* s : {"Delta (T (+) F)", "(\\x.y (+) x x) (\\x.y (+) x x)", "Theta (\\f.y (+) y f)"}) {
    Term t = P(s);
    for (unsigned f = 0; f <= 5; ++f) {
      CHECK(evalFuel(t, f).distr == oracle::toDistr(oracle::eval(oracle::fromTerm(t), f)));
    }
  }
  CHECK(compared >= 1000);
}
