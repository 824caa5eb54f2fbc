#include <doctest.h>

#include "plam/distr.hpp"
#include "support.hpp"

using namespace plam;
using testing::D;
using testing::P;
using testing::Q;

TEST_CASE("dyadic arithmetic") {
  CHECK(Q("2/4") == Dyadic::half());
  CHECK(Q("3/8").toString() == "3/8");
  CHECK(Q("1").toString() == "1");
  CHECK(Q("0").toString() == "0");
  CHECK(Q("4/8").exponent() == 1);
  CHECK(Q("1/4") + Q("1/4") == Dyadic::half());
  CHECK(Dyadic(1) - Q("1/8") == Q("7/8"));
  CHECK(Q("1/2") * Q("3/4") == Q("3/8"));
  CHECK_THROWS_AS(Q("1/3"), std::invalid_argument);
  CHECK_THROWS_AS(Q("-1/2"), std::invalid_argument);
  CHECK_THROWS_AS(Q("1/0"), std::invalid_argument);
  CHECK(Q("3/8") < Q("1/2"));
  CHECK(Dyadic::pow2inv(3).toRational() == mpq_class(1, 8));
}

TEST_CASE("scaling, adding and mass") {
  CHECK(scale(Dyadic::half(), D({{"I", "1"}})) == D({{"I", "1/2"}}));
  CHECK(add(D({{"\\y.T", "1/4"}}), D({{"\\y.F", "1/4"}})) == D({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}}));
  CHECK(add(D({{"y", "1/2"}}), D({{"y", "1/4"}})) == D({{"y", "3/4"}}));
  CHECK(mass(D({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}})) == Dyadic(1));
  CHECK(mass(D({{"I", "1/4"}})) == Q("1/4"));
  CHECK_THROWS_AS(add(D({{"I", "3/4"}}), D({{"T", "1/2"}})), MassOverflow);
  // Alpha-variants merge on insertion.
  CHECK(D({{"\\x.x", "1/4"}, {"\\y.y", "1/4"}}) == D({{"I", "1/2"}}));
  Distr z;
  z.add(P("I"), Dyadic());
  CHECK(z.empty());
}

TEST_CASE("pointwise order") {
  Distr d = D({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}});
  CHECK(leqD(Distr{}, d));
  CHECK(leqD(d, d));
  CHECK(leqD(D({{"I", "1/4"}}), d));
  CHECK_FALSE(leqD(D({{"I", "3/4"}}), d));
  CHECK_FALSE(leqD(D({{"T", "1/8"}}), d));
  CHECK_FALSE(leqD(d, D({{"I", "1/2"}})));
}

TEST_CASE("abstraction and restriction") {
  Distr a = abstractLam(D({{"T", "1/4"}, {"F", "1/4"}}));
  CHECK(a == D({{"\\z.T", "1/4"}, {"\\z.F", "1/4"}}));
  CHECK(mass(a) == Dyadic::half());
  Distr d = D({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}});
  CHECK(restrict(d, [](const Term& t) { return t == constant("I"); }) == Dyadic::half());
  CHECK(restrict(d, [](const Term&) { return false; }).isZero());
  auto entries = sortedEntries(d);
  REQUIRE(entries.size() == 3);
  CHECK(print(entries[0].first) < print(entries[1].first));
}

TEST_CASE("distribution laws on random data") {
  const auto& c = testing::closedCorpus();
  std::mt19937_64 rng(5);
  auto randomDistr = [&](Dyadic budget) {
    Distr d;
    for (int i = 0; i < 4; ++i) {
      Dyadic w = budget * Dyadic(static_cast<long>(rng() % 5), 3) ;
      if (mass(d) + w <= budget) d.add(c[rng() % c.size()], w);
    }
    return d;
  };
  for (int i = 0; i < 300; ++i) {
    Distr d = randomDistr(Dyadic::half());
    Distr e = randomDistr(Dyadic::half());
    Distr f = randomDistr(Dyadic::half());
    CHECK(mass(add(d, e)) == mass(d) + mass(e));
    Dyadic q(static_cast<long>(rng() % 9), 3);
    CHECK(mass(scale(q, d)) == q * mass(d));
    CHECK(mass(abstractLam(d)) == mass(d));
    CHECK(abstractLam(d).size() == d.size());
    // leqD is a partial order.
    CHECK(leqD(d, d));
    if (leqD(d, e) && leqD(e, d)) CHECK(d == e);
    if (leqD(d, e) && leqD(e, f)) CHECK(leqD(d, f));
    CHECK(leqD(d, add(d, e)));
  }
}
