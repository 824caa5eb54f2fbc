#include <doctest.h>

#include "plam/nakajima.hpp"
#include "support.hpp"

using namespace plam;
using testing::P;
using testing::Q;

namespace {

// lambda x1..xn z. y M1..Mm z for an hnf lambda x1..xn. y M1..Mm.
Term etaExpand(const Term& hnf) {
  auto v = std::get<HnfView>(classify(hnf));
  std::vector<Term> args;
  for (const auto& a : v.args) args.push_back(shift(a, 1));
  args.push_back(Term::bound(0));
  return assemble(HnfView{v.binders + 1, shift(v.head, 1), args});
}

const char* const kThetaChoice = "Theta (\\f.y (+) y f)";

}  // namespace

TEST_CASE("binder names") {
  CHECK(binderName(0, 2) == "#0.2");
  CHECK(isBinderName("#1.1"));
  CHECK_FALSE(isBinderName("y"));
  CHECK(displayName("#0.2") == "x2");
  CHECK(displayName("#1.1") == "z1");
  CHECK(displayName("y") == "y");
}

TEST_CASE("eta trees") {
  ProbTree e = etaTree("y", 3);
  REQUIRE(e.weights.size() == 1);
  CHECK(e.weights[0].second == Dyadic(1));
  CHECK(e.weights[0].first.head == "y");
  CHECK(e.weights[0].first.binders == 0);
  CHECK(etaTree("y", 0).weights.empty());
  // Child i of the eta tree of y is the eta tree of its i-th binder.
  ProbTree c = e.weights[0].first.child(2);
  CHECK(c.weights.at(0).first.head == binderName(0, 2));
}

TEST_CASE("eta pairs collapse") {
  TreeBuilder b(8);
  for (unsigned level = 1; level <= 4; ++level) {
    CAPTURE(level);
    CHECK(b.valueTree(P("\\z.y z"), level) == b.valueTree(Term::free("y"), level));
    CHECK(b.valueTree(P("\\x y.x y"), level) == b.valueTree(constant("I"), level));
    CHECK(b.valueTree(P("\\a b c.y a b c"), level) == b.valueTree(Term::free("y"), level));
  }
  // Trimming stops when the last argument is not the last binder.
  ValueTree t = b.valueTree(P("\\a b.y b a"), 3);
  CHECK(t.binders == 2);
  CHECK(t.args.size() == 2);
}

TEST_CASE("offsets separate trees") {
  TreeBuilder b(8);
  CHECK(certainlyDifferent(b.valueTree(P("\\a.y"), 2), b.valueTree(Term::free("y"), 2)));
  CHECK(certainlyDifferent(b.valueTree(P("\\a b.a"), 2), b.valueTree(constant("I"), 2)));
  // At level 1 only the head and its binder position count.
  CHECK(b.valueTree(P("\\a b.a"), 1) == b.valueTree(constant("I"), 1));
  CHECK(certainlyDifferent(b.valueTree(constant("T"), 1), b.valueTree(constant("F"), 1)));
  CHECK_FALSE(certainlyDifferent(b.valueTree(P("\\a.y"), 1), b.valueTree(Term::free("y"), 1)));
}

TEST_CASE("fixed point of a choice") {
  ProbTree one = probTree(P(kThetaChoice), 1, 16);
  REQUIRE(one.weights.size() == 1);
  CHECK(one.weights[0].first.head == "y");
  CHECK(one.weights[0].second == Dyadic(1));
  CHECK(one.deficit.isZero());

  ProbTree two = probTree(P(kThetaChoice), 2, 16);
  REQUIRE(two.weights.size() == 2);
  CHECK(two.weights[0].second == Dyadic::half());
  CHECK(two.weights[1].second == Dyadic::half());
  CHECK(two.weights[0].first.head == "y");
  CHECK(two.weights[1].first.head == "y");
  CHECK(two.weights[0].first.args.empty());
  REQUIRE(two.weights[1].first.args.size() == 1);
  const ProbTree& child = two.weights[1].first.args[0];
  REQUIRE(child.weights.size() == 1);
  CHECK(child.weights[0].first.head == "y");
}

TEST_CASE("the weight of a fixed tree class does not grow with the level") {
  TreeBuilder b(16);
  Dyadic previous(1);
  for (unsigned level = 1; level <= 5; ++level) {
    Dyadic w = b.probTree(P(kThetaChoice), level).weight(b.valueTree(Term::free("y"), level));
    CAPTURE(level);
    CHECK(w <= previous);
    previous = w;
  }
  CHECK(previous == Dyadic::half());
}

TEST_CASE("tree comparison verdicts") {
  for (unsigned level = 1; level <= 4; ++level) {
    TreeBuilder b(8);
    CHECK(treeEq(b.probTree(constant("I"), level), b.probTree(P("\\x y.x y"), level)).kind ==
          TreeVerdictKind::Equal);
    CHECK(treeEq(b.probTree(Term::free("y"), level), b.probTree(P("\\z.y z"), level)).kind ==
          TreeVerdictKind::Equal);
  }
  Term mm = P("(\\x.y (+) x x) (\\x.y (+) x x)");
  for (unsigned fuel : {2u, 5u, 9u}) {
    auto v = treeEq(probTree(mm, 1, fuel), probTree(Term::free("y"), 1, fuel));
    CHECK(v.kind == TreeVerdictKind::Unknown);
    CHECK(v.bound == Dyadic::pow2inv(fuel));
  }
  auto tf = treeEq(probTree(constant("T"), 1, 4), probTree(constant("F"), 1, 4));
  CHECK(tf.kind == TreeVerdictKind::Different);
  CHECK(tf.path.empty());

  // The difference sits below the root: the only children differ.
  auto deep = treeEq(probTree(P("y T"), 2, 4), probTree(P("y F"), 2, 4));
  CHECK(deep.kind == TreeVerdictKind::Different);
  CHECK(deep.path == std::vector<unsigned>{1});

  // Masses that cannot be reconciled.
  auto half = treeEq(probTree(P("y (+) z"), 1, 4), probTree(P("y"), 1, 4));
  CHECK(half.kind == TreeVerdictKind::Different);
  CHECK(half.leftWeight == Dyadic::half());
  CHECK(half.rightWeight == Dyadic(1));
  // A deficit large enough to cover the gap leaves the question open.
  auto open = treeEq(probTree(P("Omega (+) I"), 1, 4), probTree(constant("I"), 1, 4));
  CHECK(open.kind == TreeVerdictKind::Unknown);
  CHECK(open.bound == Dyadic::half());

  CHECK_THROWS_AS(treeEq(probTree(constant("I"), 1, 4), probTree(constant("I"), 2, 4)), std::invalid_argument);
}

TEST_CASE("grouping conserves mass") {
  for (std::size_t i = 0; i < testing::closedCorpus().size(); i += 2) {
    const Term& t = testing::closedCorpus()[i];
    for (unsigned level = 1; level <= 3; ++level) {
      ProbTree pt = probTree(t, level, 5);
      CHECK(pt.mass() == evalMass(t, 5));
      CHECK(pt.deficit == Dyadic(1) - pt.mass());
    }
  }
}

TEST_CASE("eta expansion leaves the tree unchanged") {
  std::size_t checked = 0, exact = 0;
  for (const auto* corpus : {&testing::closedCorpus(), &testing::openCorpus()}) {
    for (const auto& h : *corpus) {
      if (!isHnf(h)) continue;
      CAPTURE(print(h));
      Term e = etaExpand(h);
      for (unsigned level = 1; level <= 3; ++level) {
        TreeBuilder b(6);
        ProbTree a = b.probTree(h, level);
        ProbTree c = b.probTree(e, level);
        CHECK(a == c);
        CHECK(b.valueTree(etaExpand(e), level) == b.valueTree(h, level));
        auto v = treeEq(a, c);
        if (a.exact()) {
          CHECK(v.kind == TreeVerdictKind::Equal);
          ++exact;
        } else {
          CHECK(v.kind == TreeVerdictKind::Unknown);
        }
        ++checked;
      }
    }
  }
  CHECK(checked >= 300);
  CHECK(exact >= 100);
}

TEST_CASE("equality at a level implies equality at every lower level") {
  const auto& c = testing::closedCorpus();
  std::size_t equalPairs = 0;
  TreeBuilder b(6);
  std::vector<std::vector<ProbTree>> trees;
  const std::size_t n = 150;
  for (std::size_t i = 0; i < n; ++i) {
    trees.emplace_back();
    for (unsigned level = 1; level <= 3; ++level) trees.back().push_back(b.probTree(c[i], level));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (unsigned level = 3; level >= 2; --level) {
        if (treeEq(trees[i][level - 1], trees[j][level - 1]).kind != TreeVerdictKind::Equal) continue;
        ++equalPairs;
        for (unsigned lower = 1; lower < level; ++lower) {
          CHECK(treeEq(trees[i][lower - 1], trees[j][lower - 1]).kind == TreeVerdictKind::Equal);
        }
      }
    }
  }
  CHECK(equalPairs > 0);
}
