#include "plam/fixtures.hpp"

#include <functional>
#include <initializer_list>
#include <utility>

#include "plam/lab.hpp"
#include "plam/nakajima.hpp"
#include "plam/render.hpp"
#include "plam/smallstep.hpp"

namespace plam {

namespace {

// A check reports an empty string on success and a description otherwise.
using Check = std::function<std::string()>;

Distr distrOf(std::initializer_list<std::pair<const char*, const char*>> entries) {
  Distr d;
  for (const auto& [t, p] : entries) d.add(parse(t), Dyadic::parse(p));
  return d;
}

std::string expectDistr(const std::string& what, const Distr& got, const Distr& want) {
  if (got == want) return "";
  return what + ": got " + toJson(got).dump() + ", expected " + toJson(want).dump();
}

std::string expectTerm(const std::string& what, const Term& got, const Term& want) {
  if (got == want) return "";
  return what + ": got " + print(got) + ", expected " + print(want);
}

std::string expectOutcome(const std::string& what, const StepOutcome& got, const StepOutcome& want) {
  bool same = got.size() == want.size();
  for (std::size_t i = 0; same && i < got.size(); ++i) {
    same = got[i].prob == want[i].prob && got[i].successor == want[i].successor;
  }
  if (same) return "";
  std::string text;
  for (const auto& o : got) text += " (" + o.prob.toString() + ", " + print(o.successor) + ")";
  return what + ": got" + text;
}

const char* const kM = "\\x.y (+) x x";
const char* const kLeft24 = "\\x y z.z (x (+) y)";
const char* const kRight24 = "\\x y z.z x (+) z y";
const char* const kLeft48 = "\\x.x (Omega (+) I)";
const char* const kRight48 = "\\x.x Omega (+) x I";
const char* const kThetaChoice = "Theta (\\f.y (+) y f)";

Term mm() { return Term::app(parse(kM), parse(kM)); }

std::string fromEither(const std::string& a, const std::string& b) { return a.empty() ? b : a; }

std::vector<std::pair<std::string, Check>> fixtures() {
  std::vector<std::pair<std::string, Check>> f;

  // Syntax.
  f.emplace_back("duplicator parses to a self application", [] {
    return expectTerm("\\x.x x", parse("\\x.x x"), Term::lam(Term::app(Term::bound(0), Term::bound(0))));
  });
  f.emplace_back("booleans under a choice", [] {
    return expectTerm("T (+) F", parse("(\\x.\\y.x) (+) (\\x.\\y.y)"),
                      Term::choice(constant("T"), constant("F")));
  });
  f.emplace_back("call-by-name substitution duplicates the choice", [] {
    Term tf = parse("T (+) F");
    return expectTerm("(x x)[T (+) F/x]", substitute(parse("x x"), "x", tf), Term::app(tf, tf));
  });
  f.emplace_back("Omega is a beta redex in the empty context", []() -> std::string {
    auto c = classify(constant("Omega"));
    const auto* r = std::get_if<RedexView>(&c);
    if (!r || r->kind != RedexKind::Beta || r->context.binders != 0 || !r->context.spineArgs.empty() ||
        r->redex != constant("Omega")) {
      return "Omega is not classified as a top-level beta redex";
    }
    return "";
  });
  f.emplace_back("free variables", []() -> std::string {
    if (freeVars(parse("\\z.z (x (+) y)")) != std::set<std::string>{"x", "y"}) return "\\z.z (x (+) y)";
    if (freeVars(mm()) != std::set<std::string>{"y"}) return "MM";
    return "";
  });
  f.emplace_back("identity differs from its eta expansion syntactically", []() -> std::string {
    return alphaEq(constant("I"), parse("\\x y.x y")) ? "alphaEq(I, \\x y.x y) is true" : "";
  });

  // Distributions.
  f.emplace_back("scaling and adding distributions", [] {
    std::string e = expectDistr("scale", scale(Dyadic::half(), distrOf({{"I", "1"}})), distrOf({{"I", "1/2"}}));
    if (!e.empty()) return e;
    e = expectDistr("add", add(distrOf({{"\\y.T", "1/4"}}), distrOf({{"\\y.F", "1/4"}})),
                    distrOf({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}}));
    if (!e.empty()) return e;
    return expectDistr("merge", add(distrOf({{"y", "1/2"}}), distrOf({{"y", "1/4"}})), distrOf({{"y", "3/4"}}));
  });
  f.emplace_back("mass, order and restriction", []() -> std::string {
    Distr d = distrOf({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}});
    if (mass(d) != Dyadic(1)) return "mass of the duplicator result";
    if (mass(distrOf({{"I", "1/4"}})) != Dyadic::parse("1/4")) return "mass {I:1/4}";
    if (!leqD(Distr{}, d)) return "bottom is not below";
    if (restrict(d, [](const Term& t) { return t == constant("I"); }) != Dyadic::half()) return "restriction to I";
    return "";
  });
  f.emplace_back("abstraction of a distribution", [] {
    return expectDistr("abstractLam", abstractLam(distrOf({{"T", "1/4"}, {"F", "1/4"}})),
                       distrOf({{"\\z.T", "1/4"}, {"\\z.F", "1/4"}}));
  });

  // Big-step evaluation.
  f.emplace_back("duplicator applied to a boolean choice", []() -> std::string {
    Term m = parse("Delta (T (+) F)");
    Distr want = distrOf({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}});
    for (unsigned fuel = 2; fuel <= 8; ++fuel) {
      auto r = evalFuel(m, fuel);
      if (auto e = expectDistr("fuel " + std::to_string(fuel), r.distr, want); !e.empty()) return e;
      if (!r.deficit.isZero()) return "nonzero deficit";
    }
    return "";
  });
  f.emplace_back("Omega has the empty semantics", []() -> std::string {
    for (unsigned fuel = 0; fuel <= 32; ++fuel) {
      auto r = evalFuel(constant("Omega"), fuel);
      if (!r.distr.empty() || r.deficit != Dyadic(1)) return "fuel " + std::to_string(fuel);
    }
    return expectDistr("Omega (+) I", evalFuel(parse("Omega (+) I"), 4).distr, distrOf({{"I", "1/2"}}));
  });
  f.emplace_back("half-identity has mass one half", []() -> std::string {
    for (unsigned fuel = 1; fuel <= 8; ++fuel) {
      if (evalMass(constant("hid"), fuel) != Dyadic::half()) return "fuel " + std::to_string(fuel);
    }
    return "";
  });
  f.emplace_back("self-application MM converges geometrically", []() -> std::string {
    for (unsigned n = 1; n <= 12; ++n) {
      Distr want;
      want.add(Term::free("y"), Dyadic(1) - Dyadic::pow2inv(n));
      if (auto e = expectDistr("fuel " + std::to_string(n), evalFuel(mm(), n).distr, want); !e.empty()) return e;
    }
    return "";
  });
  f.emplace_back("M Omega I Delta against N Omega I Delta", []() -> std::string {
    Term args[] = {constant("Omega"), constant("I"), constant("Delta")};
    Term l = parse(kLeft24);
    Term r = parse(kRight24);
    for (const auto& a : args) {
      l = Term::app(l, a);
      r = Term::app(r, a);
    }
    for (unsigned fuel = 5; fuel <= 10; ++fuel) {
      std::string e = fromEither(expectDistr("M at fuel " + std::to_string(fuel), evalFuel(l, fuel).distr,
                                             distrOf({{"I", "1/4"}})),
                                 expectDistr("N at fuel " + std::to_string(fuel), evalFuel(r, fuel).distr,
                                             distrOf({{"I", "1/2"}})));
      if (!e.empty()) return e;
    }
    return "";
  });
  f.emplace_back("call-by-name context sees a quarter", []() -> std::string {
    Term ctx = parse("\\v.(v I Omega) (v I Omega)");
    Dyadic m = evalMass(Term::app(ctx, parse("\\x y.x (+) y")), 12);
    return m == Dyadic::parse("1/4") ? "" : "mass " + m.toString();
  });
  f.emplace_back("big-step derivability", []() -> std::string {
    if (checkBigStepDerivable(parse("Delta (T (+) F)"), distrOf({{"I", "1/2"}}), 8) != Derivability::Derivable) {
      return "{I:1/2} not derivable for Delta (T (+) F)";
    }
    if (checkBigStepDerivable(constant("Omega"), distrOf({{"I", "1/4"}}), 16) != Derivability::Unknown) {
      return "Omega derives a nonempty distribution";
    }
    return "";
  });

  // Small-step reduction.
  f.emplace_back("head steps", [] {
    Term x = Term::free("x");
    std::string e = expectOutcome("x (+) x", headStep(Term::choice(x, x)), {{Dyadic(1), x}});
    if (!e.empty()) return e;
    e = expectOutcome("T (+) F", headStep(parse("T (+) F")),
                      {{Dyadic::half(), constant("T")}, {Dyadic::half(), constant("F")}});
    if (!e.empty()) return e;
    return expectOutcome("outermost redex first", headStep(parse("(\\x.(\\y.x) y) z")),
                         {{Dyadic(1), parse("(\\y1.z) y")}});
  });
  f.emplace_back("head spine step reduces the function first", [] {
    return expectOutcome("spine", spineStep(parse("(\\x.(\\y.x) y) z")), {{Dyadic(1), parse("(\\x.x) z")}});
  });
  f.emplace_back("n-step convergence", []() -> std::string {
    std::string e = expectDistr("Omega (+) I", stepN(parse("Omega (+) I"), 2, Strategy::Head), distrOf({{"I", "1/2"}}));
    if (!e.empty()) return e;
    for (unsigned n = 0; n <= 16; ++n) {
      if (!hInfLower(constant("Omega"), n).distr.empty()) return "Omega converges in " + std::to_string(n);
    }
    return expectDistr("Delta (T (+) F)", hInfLower(parse("Delta (T (+) F)"), 4).distr,
                       distrOf({{"\\y.T", "1/4"}, {"\\y.F", "1/4"}, {"I", "1/2"}}));
  });

  // Trees.
  f.emplace_back("eta pairs share their trees", []() -> std::string {
    TreeBuilder b(8);
    for (unsigned level = 1; level <= 4; ++level) {
      if (!(b.valueTree(parse("\\z.y z"), level) == b.valueTree(Term::free("y"), level))) {
        return "y at level " + std::to_string(level);
      }
      auto v = treeEq(b.probTree(constant("I"), level), b.probTree(parse("\\x y.x y"), level));
      if (v.kind != TreeVerdictKind::Equal) return "I at level " + std::to_string(level);
    }
    return "";
  });
  f.emplace_back("fixed point of a choice: level 1 tree", []() -> std::string {
    ProbTree t = probTree(parse(kThetaChoice), 1, 16);
    if (t.weights.size() != 1 || t.weights[0].second != Dyadic(1) || t.weights[0].first.head != "y" ||
        !t.deficit.isZero()) {
      return "got " + toJson(t).dump();
    }
    return "";
  });
  f.emplace_back("fixed point of a choice: level 2 tree", []() -> std::string {
    ProbTree t = probTree(parse(kThetaChoice), 2, 16);
    if (t.weights.size() != 2 || !t.deficit.isZero()) return "got " + toJson(t).dump();
    for (const auto& [vt, w] : t.weights) {
      if (w != Dyadic::half() || vt.head != "y") return "got " + toJson(t).dump();
    }
    // One tree has no children; the other has a single child whose own
    // tree is y with mass 1.
    const ValueTree& bare = t.weights[0].first;
    const ValueTree& deep = t.weights[1].first;
    if (!bare.args.empty() || deep.args.size() != 1) return "got " + toJson(t).dump();
    const ProbTree& c = deep.args[0];
    if (c.weights.size() != 1 || c.weights[0].first.head != "y" || c.weights[0].second != Dyadic(1)) {
      return "got " + toJson(t).dump();
    }
    return "";
  });
  f.emplace_back("MM against y stays open with a shrinking bound", []() -> std::string {
    for (unsigned fuel = 2; fuel <= 10; fuel += 4) {
      auto v = treeEq(probTree(mm(), 1, fuel), probTree(Term::free("y"), 1, fuel));
      if (v.kind != TreeVerdictKind::Unknown || v.bound != Dyadic::pow2inv(fuel)) {
        return "fuel " + std::to_string(fuel) + ": " + toJson(v).dump();
      }
    }
    return "";
  });

  // Markov chain and games.
  f.emplace_back("chain transitions", []() -> std::string {
    StateDistr d = transitions(MarkovState::termState(parse("T (+) F")), TransitionLabel::tau(), 2);
    StateDistr want;
    want.add(MarkovState::hnfState(constant("T").body()), Dyadic::half());
    want.add(MarkovState::hnfState(constant("F").body()), Dyadic::half());
    if (!(d == want)) return "tau from T (+) F";
    Term body = parse(kLeft48).body();
    StateDistr a = transitions(MarkovState::hnfState(body), TransitionLabel::apply(constant("I")), 2);
    StateDistr wantA;
    wantA.add(MarkovState::termState(parse("I (Omega (+) I)")), Dyadic(1));
    return a == wantA ? "" : "applying I";
  });
  f.emplace_back("bisimulation game separates the two choice placements", []() -> std::string {
    GameOptions o;
    o.pool = {constant("Omega"), constant("I")};
    auto c = refuteBisim(parse(kLeft24), parse(kRight24), o);
    if (!c) return "no refutation";
    if (!replayCertificate(*c, GameMode::Bisimulation, o)) return "certificate does not replay";
    auto labels = c->primaryLabels();
    std::vector<std::string> applied;
    for (const auto& l : labels) {
      if (!l.isTau()) applied.push_back(l.toString());
    }
    if (applied.size() < 2 || applied[0] != print(constant("Omega")) || applied[1] != print(constant("I"))) {
      return "unexpected trace " + gameVerdictJson(c).dump();
    }
    return "";
  });
  f.emplace_back("identity and its eta expansion are not refuted", []() -> std::string {
    for (const auto& pool : {std::vector<Term>{constant("Omega"), constant("I")}, defaultPool()}) {
      GameOptions o;
      o.pool = pool;
      if (refuteBisim(constant("I"), parse("\\x y.x y"), o)) return "refuted";
    }
    return "";
  });
  f.emplace_back("simulation fails in both directions", []() -> std::string {
    GameOptions o;
    o.pool = {constant("I")};
    o.depth = 6;
    const std::pair<const char*, const char*> sides[] = {{kLeft48, kRight48}, {kRight48, kLeft48}};
    const std::pair<const char*, const char*> leaves[] = {{"1/2", "0"}, {"1", "1/2"}};
    for (int i = 0; i < 2; ++i) {
      auto c = refuteSim(parse(sides[i].first), parse(sides[i].second), o);
      if (!c) return "direction " + std::to_string(i + 1) + " not refuted";
      if (!replayCertificate(*c, GameMode::Simulation, o)) return "direction " + std::to_string(i + 1) + " does not replay";
      const Certificate& leaf = c->primaryLeaf();
      if (leaf.lower != Dyadic::parse(leaves[i].first) || leaf.upper != Dyadic::parse(leaves[i].second)) {
        return "direction " + std::to_string(i + 1) + " separates " + leaf.lower.toString() + " vs " +
               leaf.upper.toString();
      }
    }
    return "";
  });
  f.emplace_back("applicative comparison of the two choice placements", []() -> std::string {
    auto rows = applicativeCompare(parse(kLeft24), parse(kRight24),
                                   {{constant("Omega"), constant("I"), constant("Delta")}}, AppOptions{});
    const AppRow& r = rows.at(0);
    if (r.leftLower != Dyadic::parse("1/4") || r.leftUpper != Dyadic::parse("1/4") ||
        r.rightLower != Dyadic::half() || r.rightUpper != Dyadic::half() || r.verdict != AppVerdict::RightExceeds) {
      return "got " + toJson(rows).dump();
    }
    return "";
  });
  f.emplace_back("applicative comparison never puts the early choice above", []() -> std::string {
    auto rows = applicativeCompare(parse(kLeft48), parse(kRight48),
                                   allSequences({constant("I"), constant("Omega"), constant("Delta")}, 3),
                                   AppOptions{});
    for (const auto& r : rows) {
      if (r.verdict == AppVerdict::LeftExceeds) return "left exceeds on " + toJson(std::vector<AppRow>{r}).dump();
    }
    return "";
  });
  return f;
}

}  // namespace

std::vector<FixtureResult> runFixtures() {
  std::vector<FixtureResult> out;
  for (auto& [name, check] : fixtures()) {
    FixtureResult r{name, false, ""};
    try {
      r.detail = check();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace plam
