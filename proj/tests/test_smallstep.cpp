#include <doctest.h>

#include "oracle.hpp"
#include "plam/smallstep.hpp"
#include "support.hpp"

using namespace plam;
using testing::D;
using testing::P;
using testing::Q;

namespace {

bool sameOutcome(const StepOutcome& got, const StepOutcome& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i].prob != want[i].prob || got[i].successor != want[i].successor) return false;
  }
  return true;
}

Dyadic total(const StepOutcome& o) {
  Dyadic t;
  for (const auto& x : o) t += x.prob;
  return t;
}

}  // namespace

TEST_CASE("head steps") {
  Term x = Term::free("x");
  CHECK(sameOutcome(headStep(Term::choice(x, x)), {{Dyadic(1), x}}));
  CHECK(sameOutcome(headStep(P("T (+) F")), {{Dyadic::half(), constant("T")}, {Dyadic::half(), constant("F")}}));
  CHECK(sameOutcome(headStep(P("(\\x.(\\y.x) y) z")), {{Dyadic(1), P("(\\a.z) y")}}));
  // Reduction happens under the head binders and keeps the spine arguments.
  CHECK(sameOutcome(headStep(P("\\a.(I (+) a) b")), {{Dyadic::half(), P("\\a.I b")}, {Dyadic::half(), P("\\a.a b")}}));
  // Alpha-equivalent branches collapse into one outcome.
  CHECK(sameOutcome(headStep(P("(\\a.a) (+) (\\b.b)")), {{Dyadic(1), constant("I")}}));
  // Head normal forms loop on themselves.
  CHECK(sameOutcome(headStep(P("\\a.a Omega")), {{Dyadic(1), P("\\a.a Omega")}}));
}

TEST_CASE("head spine steps reduce the function part first") {
  CHECK(sameOutcome(spineStep(P("(\\x.(\\y.x) y) z")), {{Dyadic(1), P("(\\x.x) z")}}));
  CHECK(sameOutcome(spineStep(P("(\\x.x) z")), {{Dyadic(1), P("z")}}));
  CHECK(sameOutcome(spineStep(P("\\x.I I")), {{Dyadic(1), P("\\x.I")}}));
  CHECK(sameOutcome(spineStep(P("(\\x.x (+) I) y")), {{Dyadic::half(), P("(\\x.x) y")}, {Dyadic::half(), P("(\\x.I) y")}}));
  CHECK(sameOutcome(step(P("T (+) F"), Strategy::Spine), step(P("T (+) F"), Strategy::Head)));
}

TEST_CASE("step outcomes are stochastic") {
  for (const auto* corpus : {&testing::closedCorpus(), &testing::openCorpus()}) {
    for (const auto& t : *corpus) {
      for (Strategy s : {Strategy::Head, Strategy::Spine}) {
        StepOutcome o = step(t, s);
        CHECK(total(o) == Dyadic(1));
        for (const auto& x : o) CHECK(x.prob > Dyadic());
      }
    }
  }
}

TEST_CASE("n-step convergence") {
  CHECK(stepN(P("Omega (+) I"), 2, Strategy::Head) == D({{"I", "1/2"}}));
  CHECK(stepN(P("Omega (+) I"), 0, Strategy::Head).empty());
  for (unsigned n = 0; n <= 20; ++n) CHECK(hInfLower(constant("Omega"), n).distr.empty());
  auto r = hInfLower(P("Delta (T (+) F)"), 4);
  CHECK(r.distr == D({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}}));
  CHECK(r.deficit.isZero());
  Term mm = P("(\\x.y (+) x x) (\\x.y (+) x x)");
  CHECK(stepN(mm, 4, Strategy::Head) == D({{"y", "3/4"}}));
  CHECK(stepN(mm, 4, Strategy::Spine) == D({{"y", "3/4"}}));
}

TEST_CASE("convergence tables are cumulative") {
  for (std::size_t i = 0; i < testing::closedCorpus().size(); i += 3) {
    const Term& t = testing::closedCorpus()[i];
    for (Strategy s : {Strategy::Head, Strategy::Spine}) {
      auto rows = convergenceTable(t, 8, s);
      REQUIRE(rows.size() == 9);
      for (std::size_t n = 1; n < rows.size(); ++n) CHECK(leqD(rows[n - 1], rows[n]));
      CHECK(rows[8] == stepN(t, 8, s));
    }
  }
}

TEST_CASE("head reduction agrees with path enumeration") {
  std::size_t compared = 0;
  for (const auto* corpus : {&testing::closedCorpus(), &testing::openCorpus()}) {
    for (std::size_t i = 0; i < corpus->size(); i += 2) {
      const Term& t = (*corpus)[i];
      CAPTURE(print(t));
      auto named = oracle::fromTerm(t);
      for (unsigned n : {0u, 1u, 3u, 6u}) {
        CHECK(stepN(t, n, Strategy::Head) == oracle::toDistr(oracle::headPaths(named, n)));
        ++compared;
      }
    }
  }
  CHECK(compared >= 1000);
}

TEST_CASE("frontier and size caps") {
  StepLimits tight;
  tight.maxFrontier = 4;
  // Each choice doubles the live frontier.
  Term wide = P("(\\a.a a a a) (\\b.(b (+) I) (b (+) I))");
  CHECK_THROWS_AS(stepN(wide, 12, Strategy::Head, tight), ResourceError);
  StepLimits small;
  small.maxTermSize = 20;
  CHECK_THROWS_AS(stepN(P("(\\x.x x x) (\\x.x x x)"), 10, Strategy::Head, small), ResourceError);
  CHECK_THROWS_AS(traceTree(wide, 12, Strategy::Head, 16), ResourceError);
}

TEST_CASE("reduction trees") {
  StepTree t = traceTree(P("Delta (T (+) F)"), 4, Strategy::Head);
  CHECK(t.prob == Dyadic(1));
  CHECK(t.term == P("Delta (T (+) F)"));
  REQUIRE(t.children.size() == 1);
  const StepTree& c = t.children[0];
  CHECK(c.term == P("(T (+) F) (T (+) F)"));
  REQUIRE(c.children.size() == 2);
  CHECK(c.children[0].prob == Dyadic::half());
  StepTree leaf = traceTree(P("\\x.x"), 3, Strategy::Head);
  CHECK(leaf.children.empty());
}

TEST_CASE("divergence certificates") {
  DivergenceOracle o;
  CHECK(o.certifiedDivergent(constant("Omega")));
  CHECK(o.certifiedDivergent(P("I Omega")));
  CHECK(o.certifiedDivergent(P("\\x.Omega")));
  CHECK(o.certifiedDivergent(P("Omega (+) (Delta Delta)")));
  CHECK_FALSE(o.certifiedDivergent(P("Omega (+) I")));
  CHECK_FALSE(o.certifiedDivergent(P("(\\x.y (+) x x) (\\x.y (+) x x)")));
  // Growing terms are never closed off within the state cap.
  CHECK_FALSE(o.certifiedDivergent(P("(\\x.x x x) (\\x.x x x)")));
}

TEST_CASE("mass bounds bracket the evaluation") {
  DivergenceOracle o;
  for (const auto& t : testing::closedCorpus()) {
    CAPTURE(print(t));
    MassBounds b = convergenceBounds(t, 12, o);
    CHECK(b.upperMass <= Dyadic(1));
    CHECK(b.lower.mass() <= b.upperMass);
    CHECK(leqD(b.lower, stepN(t, 12, Strategy::Head)));
    // No approximant can exceed the upper bound.
    CHECK(evalMass(t, 8) <= b.upperMass);
  }
  MassBounds h = convergenceBounds(P("Omega (+) I"), 4, o);
  CHECK(h.lower == D({{"I", "1/2"}}));
  CHECK(h.upperMass == Dyadic::half());
}

TEST_CASE("commutation witnesses for spine steps") {
  Term m = P("(\\x.(\\y.x) y) z");
  auto w = commutationWitness(m, P("(\\x.x) z"), Dyadic(1), 4);
  REQUIRE(w);
  CHECK(w->n0 == 1);
  CHECK(w->meet == P("z"));
  CHECK(replayCommutation(m, P("(\\x.x) z"), Dyadic(1), *w));
  CHECK_FALSE(replayCommutation(m, P("(\\x.x) z"), Dyadic(1), CommutationWitness{0, P("z")}));
}
