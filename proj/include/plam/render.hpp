// JSON and text renderings of every result type, plus the readers needed to
// load assignment problems and to round-trip JSON output.
//
// Probabilities are strings in lowest terms ("3/8", "1", "0"). Terms are
// printed surface syntax.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "plam/assignment.hpp"
#include "plam/lab.hpp"
#include "plam/nakajima.hpp"
#include "plam/smallstep.hpp"

namespace plam {

using Json = nlohmann::json;

Json toJson(const Distr& d);         // {"support":[{"term","prob"}],"mass"}
Json toJson(const EvalResult& r);    // the distribution plus "deficit"
Distr distrFromJson(const Json& j);  // throws std::invalid_argument
EvalResult evalResultFromJson(const Json& j);
std::string renderText(const Distr& d);
std::string renderText(const EvalResult& r);

Json toJson(const StepTree& t);  // nested {"prob","term","children"}
StepTree stepTreeFromJson(const Json& j);
std::string renderText(const StepTree& t);
Json convergenceTableJson(const std::vector<Distr>& rows);
std::string renderConvergenceText(const std::vector<Distr>& rows);

// {"level","deficit","trees":[{"weight","binders","head","args":[...]}]}.
// A head bound by some enclosing node also carries
// "headBinder":{"depth","position"}, so the tree can be read back.
Json toJson(const ProbTree& t);
ProbTree probTreeFromJson(const Json& j, unsigned depth = 0);
std::string renderText(const ProbTree& t);

Json toJson(const TreeVerdict& v);
std::string renderText(const TreeVerdict& v);

Json toJson(const MarkovState& s);  // {"kind":"term"|"hnf","term": closed term}
MarkovState markovStateFromJson(const Json& j);
Json toJson(const Certificate& c);
Certificate certificateFromJson(const Json& j);
std::string renderText(const Certificate& c);
// {"verdict":"refuted","trace":[labels],"certificate":{...}} or {"verdict":"none"}.
Json gameVerdictJson(const std::optional<Certificate>& c);

std::string verdictName(AppVerdict v);
Json toJson(const std::vector<AppRow>& rows);
std::string renderText(const std::vector<AppRow>& rows);

mpq_class rationalFromString(const std::string& text);
AssignmentProblem assignmentProblemFromJson(const Json& j);
Json toJson(const AssignmentProblem& p);
Json toJson(const std::variant<AssignmentSolution, Infeasible>& r);
std::string renderText(const std::variant<AssignmentSolution, Infeasible>& r);

}  // namespace plam
