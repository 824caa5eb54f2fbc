// The labelled Markov chain of closed terms, bounded refutation of
// (bi)simulation, and applicative mass comparison.
//
// Bisimilarity and similarity are never certified, only refuted. A refutation
// is a Certificate: a finite AND/OR tree whose leaves compare a lower bound on
// one side's tau-mass against an upper bound on the other's. Lower bounds come
// from fuel-bounded evaluation. Upper bounds add a slack to them that is the
// smaller of the evaluation deficit and what head reduction leaves alive after
// a number of steps once certifiably divergent terms are discounted.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "plam/bigstep.hpp"
#include "plam/nakajima.hpp"
#include "plam/smallstep.hpp"

namespace plam {

class MarkovState {
 public:
  static MarkovState termState(Term closed);
  // The distinguished hnf nu x.body; `body` has index 0 as its only dangling variable.
  static MarkovState hnfState(Term body);

  bool isTerm() const { return !hnf_; }
  bool isHnf() const { return hnf_; }
  // The closed term of a term state, or the body of an hnf state.
  const Term& term() const { return t_; }
  // lambda x.body for hnf states; the term itself otherwise.
  Term closed() const;
  std::string toString() const;

  friend bool operator==(const MarkovState& a, const MarkovState& b) {
    return a.hnf_ == b.hnf_ && a.t_ == b.t_;
  }
  friend bool operator!=(const MarkovState& a, const MarkovState& b) { return !(a == b); }

 private:
  MarkovState(bool hnf, Term t) : hnf_(hnf), t_(std::move(t)) {}
  bool hnf_;
  Term t_;
};

struct MarkovStateHash {
  std::size_t operator()(const MarkovState& s) const { return s.term().hash() * 2 + (s.isHnf() ? 1 : 0); }
};

class TransitionLabel {
 public:
  static TransitionLabel tau() { return TransitionLabel(std::nullopt); }
  static TransitionLabel apply(Term closedArg) { return TransitionLabel(std::move(closedArg)); }
  bool isTau() const { return !arg_.has_value(); }
  const Term& argument() const { return *arg_; }
  std::string toString() const;

  friend bool operator==(const TransitionLabel& a, const TransitionLabel& b) { return a.arg_ == b.arg_; }

 private:
  explicit TransitionLabel(std::optional<Term> arg) : arg_(std::move(arg)) {}
  std::optional<Term> arg_;
};

using StateDistr = WeightMap<MarkovState, MarkovStateHash>;

StateDistr transitions(const MarkovState& s, const TransitionLabel& label, unsigned fuel);

// The lambda-closure of m over `names`, outermost binder first.
Term closeOver(const Term& m, const std::vector<std::string>& names);
// Closes both terms over the union of their free names, in lexicographic order.
std::pair<Term, Term> closePair(const Term& m, const Term& n);

enum class GameMode { Simulation, Bisimulation };

struct GameOptions {
  unsigned depth = 8;  // maximum number of labels along any path of a certificate
  unsigned fuel = 16;
  std::vector<Term> pool;
  unsigned treeLevel = 1;   // level of the Nakajima trees that separate blocks
  unsigned boundSteps = 32;  // head steps spent on upper bounds
  DivergenceLimits divergence = {};
  EvalLimits eval = {};
};

std::vector<Term> defaultPool();

enum class GameRule {
  TotalMass,  // simulation: all of the left's tau-mass cannot fit under the right's
  BlockMass,  // bisimulation: a block of tree-equivalent hnfs gets incompatible masses
  Forced,     // an hnf's weight exceeds what its unrefuted partners can absorb
  Apply,      // an argument separates two hnf states
};

struct Certificate {
  GameRule rule = GameRule::TotalMass;
  std::optional<MarkovState> left;
  std::optional<MarkovState> right;
  TransitionLabel label = TransitionLabel::tau();
  // BlockMass/Forced in bisimulation: the heavy side is the right one.
  bool pivotOnRight = false;
  std::optional<MarkovState> pivot;
  // Lower bound on the heavy side against upper bound on the light side.
  Dyadic lower;
  Dyadic upper;
  // Forced: refutations of the pivot against each excluded partner.
  // Apply: the refutation of the two successors.
  std::vector<Certificate> children;

  unsigned depth() const;
  // Labels along the first branch, ending with the separating leaf.
  std::vector<TransitionLabel> primaryLabels() const;
  const Certificate& primaryLeaf() const;
};

class GameSolver {
 public:
  GameSolver(GameMode mode, GameOptions options);

  std::optional<Certificate> refute(const Term& m, const Term& n);
  // Re-derives every number in the certificate from its states.
  bool replay(const Certificate& c);

  GameMode mode() const { return mode_; }
  const GameOptions& options() const { return options_; }

 private:
  struct Tau {
    StateDistr lower;
    Dyadic slack;
    std::vector<std::pair<MarkovState, Dyadic>> sorted;  // by weight, heaviest first
  };

  const Tau& tau(const MarkovState& s);
  bool treeSeparated(const MarkovState& a, const MarkovState& b);
  // Union-find blocks over the union of both supports.
  std::vector<std::vector<MarkovState>> blocks(const Tau& s, const Tau& t);

  std::optional<Certificate> refuteTerms(const MarkovState& s, const MarkovState& t, unsigned d);
  std::optional<Certificate> refuteHnfs(const MarkovState& a, const MarkovState& b, unsigned d);
  std::optional<Certificate> forced(const MarkovState& s, const MarkovState& t, const Tau& heavy,
                                    const Tau& light, bool onRight, unsigned d);

  GameMode mode_;
  GameOptions options_;
  Evaluator eval_;
  TreeBuilder trees_;
  DivergenceOracle divergence_;
  std::unordered_map<MarkovState, Tau, MarkovStateHash> tauCache_;
  std::unordered_map<MarkovState, ValueTree, MarkovStateHash> treeCache_;
  std::set<std::tuple<std::size_t, std::size_t, unsigned>> failed_;
  std::unordered_map<MarkovState, std::size_t, MarkovStateHash> ids_;
  std::size_t idOf(const MarkovState& s);
};

std::optional<Certificate> refuteBisim(const Term& m, const Term& n, const GameOptions& options);
std::optional<Certificate> refuteSim(const Term& m, const Term& n, const GameOptions& options);
bool replayCertificate(const Certificate& c, GameMode mode, const GameOptions& options);

enum class AppVerdict { LeftExceeds, RightExceeds, Inconclusive };

struct AppRow {
  std::vector<Term> args;
  Dyadic leftLower, leftUpper;
  Dyadic rightLower, rightUpper;
  AppVerdict verdict = AppVerdict::Inconclusive;
};

struct AppOptions {
  unsigned fuel = 16;
  unsigned boundSteps = 32;
  DivergenceLimits divergence = {};
};

// All argument sequences over the pool of length 0..maxLen, shortest first.
std::vector<std::vector<Term>> allSequences(const std::vector<Term>& pool, unsigned maxLen);

std::vector<AppRow> applicativeCompare(const Term& m, const Term& n,
                                       const std::vector<std::vector<Term>>& argSeqs,
                                       const AppOptions& options);

}  // namespace plam
