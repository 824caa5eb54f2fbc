// plam: command-line front end for the probabilistic lambda toolkit.
//
// Exit status: 0 on success (including any verdict), 1 on usage or parse
// errors and failed fixtures or properties, 2 when a resource cap is exceeded.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "plam/assignment.hpp"
#include "plam/fixtures.hpp"
#include "plam/generate.hpp"
#include "plam/lab.hpp"
#include "plam/render.hpp"

using namespace plam;

namespace {

struct Settings {
  std::string format = "text";
  unsigned fuel = 16;
  unsigned maxFuel = 256;
  unsigned steps = 8;
  std::string strategy = "head";
  unsigned level = 1;
  unsigned depth = 8;
  unsigned maxDepth = 32;
  std::string pool;
  unsigned maxLen = 2;
  std::uint64_t seed = 1;
  unsigned count = 1000;
  std::size_t maxLeaves = std::size_t{1} << 16;
  unsigned maxN = kDefaultAssignmentCap;
  std::string problem;
  std::vector<std::string> terms;
};

bool json(const Settings& s) { return s.format == "json"; }

void emit(const Settings& s, const Json& j, const std::string& text) {
  if (json(s)) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

void checkCap(const char* cap, unsigned value, unsigned limit) {
  if (value > limit) {
    throw ResourceError(cap, std::to_string(value) + " exceeds the limit " + std::to_string(limit));
  }
}

unsigned fuelOf(const Settings& s) {
  checkCap("fuel", s.fuel, s.maxFuel);
  return s.fuel;
}

std::vector<Term> poolOf(const Settings& s, std::vector<Term> fallback) {
  if (s.pool.empty()) return fallback;
  std::vector<Term> pool;
  std::stringstream in(s.pool);
  std::string item;
  while (std::getline(in, item, ',')) {
    Term t = parse(item);
    if (!isClosed(t)) throw std::invalid_argument("pool term '" + item + "' is not closed");
    pool.push_back(t);
  }
  if (pool.empty()) throw std::invalid_argument("empty pool");
  return pool;
}

int cmdParse(const Settings& s) {
  Term t = parse(s.terms.at(0));
  auto fv = freeVars(t);
  Json j = {{"term", print(t)},
            {"size", t.size()},
            {"closed", isClosed(t)},
            {"hnf", isHnf(t)},
            {"freeVars", std::vector<std::string>(fv.begin(), fv.end())}};
  emit(s, j, print(t) + "\n");
  return 0;
}

int cmdEval(const Settings& s) {
  EvalLimits limits;
  auto r = evalFuel(parse(s.terms.at(0)), fuelOf(s), limits);
  emit(s, toJson(r), renderText(r));
  return 0;
}

int cmdTrace(const Settings& s) {
  Strategy st;
  if (s.strategy == "head") {
    st = Strategy::Head;
  } else if (s.strategy == "spine") {
    st = Strategy::Spine;
  } else {
    throw std::invalid_argument("unknown strategy '" + s.strategy + "'");
  }
  Term m = parse(s.terms.at(0));
  StepLimits limits;
  limits.maxFrontier = s.maxLeaves;
  StepTree tree = traceTree(m, s.steps, st, s.maxLeaves);
  auto table = convergenceTable(m, s.steps, st, limits);
  Json j = {{"tree", toJson(tree)}, {"table", convergenceTableJson(table)}};
  emit(s, j, renderText(tree) + "\n" + renderConvergenceText(table));
  return 0;
}

int cmdTree(const Settings& s) {
  ProbTree t = probTree(parse(s.terms.at(0)), s.level, fuelOf(s));
  emit(s, toJson(t), renderText(t));
  return 0;
}

int cmdCompareTree(const Settings& s) {
  TreeBuilder b(fuelOf(s));
  auto v = treeEq(b.probTree(parse(s.terms.at(0)), s.level), b.probTree(parse(s.terms.at(1)), s.level));
  emit(s, toJson(v), renderText(v));
  return 0;
}

int cmdGame(const Settings& s, GameMode mode) {
  checkCap("depth", s.depth, s.maxDepth);
  GameOptions o;
  o.depth = s.depth;
  o.fuel = fuelOf(s);
  o.pool = poolOf(s, defaultPool());
  o.treeLevel = s.level;
  auto c = mode == GameMode::Bisimulation ? refuteBisim(parse(s.terms.at(0)), parse(s.terms.at(1)), o)
                                          : refuteSim(parse(s.terms.at(0)), parse(s.terms.at(1)), o);
  std::string text = c ? "refuted\n" + renderText(*c) : "none (no refutation within the bounds)\n";
  emit(s, gameVerdictJson(c), text);
  return 0;
}

int cmdAppcmp(const Settings& s) {
  AppOptions o;
  o.fuel = fuelOf(s);
  auto pool = poolOf(s, {constant("I"), constant("Omega"), constant("Delta")});
  auto rows = applicativeCompare(parse(s.terms.at(0)), parse(s.terms.at(1)), allSequences(pool, s.maxLen), o);
  emit(s, toJson(rows), renderText(rows));
  return 0;
}

int cmdAssign(const Settings& s) {
  std::ifstream in(s.problem);
  if (!in) throw std::invalid_argument("cannot read '" + s.problem + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON in problem file: ") + e.what());
  }
  auto r = assignmentSolve(assignmentProblemFromJson(j), s.maxN);
  emit(s, toJson(r), renderText(r));
  return 0;
}

int cmdFixtures(const Settings& s) {
  auto results = runFixtures();
  Json arr = Json::array();
  std::string text;
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    text += std::string(r.passed ? "pass  " : "FAIL  ") + r.name;
    if (!r.passed) text += ": " + r.detail;
    text += "\n";
  }
  emit(s, {{"fixtures", arr}, {"allPassed", ok}}, text);
  return ok ? 0 : 1;
}

// A quick randomized sweep over generated terms; the full property suite
// lives in the test binaries.
int cmdProptest(const Settings& s) {
  auto terms = corpus(s.seed, s.count);
  std::size_t failures = 0;
  std::string log;
  auto fail = [&](const Term& t, const std::string& what) {
    ++failures;
    log += "FAIL  " + what + ": " + print(t) + "\n";
  };
  for (const auto& t : terms) {
    if (!(parse(print(t)) == t)) fail(t, "print/parse round trip");
    Evaluator ev;
    Distr prev;
    for (unsigned f = 0; f <= 6; ++f) {
      const Distr& d = ev.eval(t, f);
      if (!leqD(prev, d)) fail(t, "fuel monotonicity at " + std::to_string(f));
      prev = d;
    }
    for (Strategy st : {Strategy::Head, Strategy::Spine}) {
      if (isHnf(t)) continue;
      Dyadic total;
      for (const auto& o : step(t, st)) total += o.prob;
      if (total != Dyadic(1)) fail(t, "step probabilities sum to " + total.toString());
    }
    for (unsigned n = 0; n <= 6; ++n) {
      if (!(stepN(t, n, Strategy::Head) == stepN(t, n, Strategy::Spine))) {
        fail(t, "head and spine differ after " + std::to_string(n) + " steps");
        break;
      }
    }
  }
  Json j = {{"seed", s.seed}, {"cases", terms.size()}, {"failures", failures}};
  emit(s, j, log + std::to_string(terms.size()) + " cases, " + std::to_string(failures) + " failures\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact evaluation and equivalence analysis for the probabilistic lambda calculus"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    return sub;
  };
  auto withFuel = [&](CLI::App* sub) {
    sub->add_option("--fuel", s.fuel, "Evaluation fuel")->capture_default_str();
    sub->add_option("--max-fuel", s.maxFuel, "Largest fuel accepted")->capture_default_str();
    return sub;
  };
  auto oneTerm = [&](CLI::App* sub) {
    sub->add_option("term", s.terms, "Term in surface syntax")->required()->expected(1);
    return sub;
  };
  auto twoTerms = [&](CLI::App* sub) {
    sub->add_option("terms", s.terms, "Two terms in surface syntax")->required()->expected(2);
    return sub;
  };

  auto* parseCmd = oneTerm(common(app.add_subcommand("parse", "Parse and pretty-print a term")));
  auto* evalCmd = oneTerm(withFuel(common(app.add_subcommand("eval", "Fuel-bounded head distribution"))));

  auto* traceCmd = oneTerm(common(app.add_subcommand("trace", "Reduction tree and convergence table")));
  traceCmd->add_option("--steps", s.steps, "Number of steps")->capture_default_str();
  traceCmd->add_option("--strategy", s.strategy, "head or spine")->check(CLI::IsMember({"head", "spine"}));
  traceCmd->add_option("--max-leaves", s.maxLeaves, "Cap on live terms and tree nodes")->capture_default_str();

  auto* treeCmd = oneTerm(withFuel(common(app.add_subcommand("tree", "Probabilistic Nakajima tree"))));
  treeCmd->add_option("--level", s.level, "Tree level")->capture_default_str();
  auto* cmpCmd = twoTerms(withFuel(common(app.add_subcommand("compare-tree", "Compare two trees"))));
  cmpCmd->add_option("--level", s.level, "Tree level")->capture_default_str();

  auto gameFlags = [&](CLI::App* sub) {
    sub->add_option("--depth", s.depth, "Maximum certificate depth")->capture_default_str();
    sub->add_option("--max-depth", s.maxDepth, "Largest depth accepted")->capture_default_str();
    sub->add_option("--pool", s.pool, "Comma-separated closed argument terms");
    sub->add_option("--level", s.level, "Tree level separating blocks")->capture_default_str();
    return sub;
  };
  auto* bisimCmd = gameFlags(twoTerms(withFuel(common(app.add_subcommand("bisim", "Refute bisimilarity")))));
  auto* simCmd = gameFlags(twoTerms(withFuel(common(app.add_subcommand("sim", "Refute similarity")))));

  auto* appCmd = twoTerms(withFuel(common(app.add_subcommand("appcmp", "Applicative mass comparison"))));
  appCmd->add_option("--maxlen", s.maxLen, "Longest argument sequence")->capture_default_str();
  appCmd->add_option("--pool", s.pool, "Comma-separated closed argument terms");

  auto* assignCmd = common(app.add_subcommand("assign", "Solve a probabilistic assignment problem"));
  assignCmd->add_option("--problem", s.problem, "Problem file (JSON)")->required();
  assignCmd->add_option("--max-n", s.maxN, "Largest number of elements accepted")->capture_default_str();

  auto* fixturesCmd = common(app.add_subcommand("fixtures", "Replay the reference examples"));

  auto* propCmd = common(app.add_subcommand("proptest", "Randomized property sweep"));
  propCmd->add_option("--seed", s.seed, "Generator seed")->capture_default_str();
  propCmd->add_option("--count", s.count, "Number of generated terms")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (parseCmd->parsed()) return cmdParse(s);
    if (evalCmd->parsed()) return cmdEval(s);
    if (traceCmd->parsed()) return cmdTrace(s);
    if (treeCmd->parsed()) return cmdTree(s);
    if (cmpCmd->parsed()) return cmdCompareTree(s);
    if (bisimCmd->parsed()) return cmdGame(s, GameMode::Bisimulation);
    if (simCmd->parsed()) return cmdGame(s, GameMode::Simulation);
    if (appCmd->parsed()) return cmdAppcmp(s);
    if (assignCmd->parsed()) return cmdAssign(s);
    if (fixturesCmd->parsed()) return cmdFixtures(s);
    if (propCmd->parsed()) return cmdProptest(s);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
