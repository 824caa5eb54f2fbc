#include "plam/render.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace plam {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' is not a string");
  return v.get<std::string>();
}

Dyadic dyadic(const Json& j, const char* key) { return Dyadic::parse(str(j, key)); }

unsigned natural(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) bad(std::string("field '") + key + "' is not a natural number");
  return v.get<unsigned>();
}

Term term(const Json& j, const char* key) { return parse(str(j, key)); }

std::string indent(unsigned n) { return std::string(2 * n, ' '); }

}  // namespace

// ---------------------------------------------------------------------------
// Distributions

Json toJson(const Distr& d) {
  Json support = Json::array();
  for (const auto& [t, w] : sortedEntries(d)) {
    support.push_back({{"term", print(t)}, {"prob", w.toString()}});
  }
  return {{"support", support}, {"mass", mass(d).toString()}};
}

Json toJson(const EvalResult& r) {
  Json j = toJson(r.distr);
  j["deficit"] = r.deficit.toString();
  return j;
}

Distr distrFromJson(const Json& j) {
  const Json& support = field(j, "support");
  if (!support.is_array()) bad("'support' is not an array");
  Distr d;
  for (const auto& e : support) d.add(term(e, "term"), dyadic(e, "prob"));
  if (d.mass() > Dyadic(1)) bad("total mass exceeds 1");
  if (j.contains("mass") && dyadic(j, "mass") != d.mass()) bad("'mass' disagrees with the support");
  return d;
}

EvalResult evalResultFromJson(const Json& j) {
  EvalResult r{distrFromJson(j), dyadic(j, "deficit")};
  if (r.deficit + r.distr.mass() != Dyadic(1)) bad("'deficit' is not 1 minus the mass");
  return r;
}

std::string renderText(const Distr& d) {
  if (d.empty()) return "bottom\n";
  std::ostringstream out;
  for (const auto& [t, w] : sortedEntries(d)) out << w.toString() << "\t" << print(t) << "\n";
  return out.str();
}

std::string renderText(const EvalResult& r) {
  std::string out = renderText(r.distr);
  out += "mass " + r.distr.mass().toString() + ", deficit " + r.deficit.toString() + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Reduction traces

Json toJson(const StepTree& t) {
  Json children = Json::array();
  for (const auto& c : t.children) children.push_back(toJson(c));
  return {{"prob", t.prob.toString()}, {"term", print(t.term)}, {"children", children}};
}

StepTree stepTreeFromJson(const Json& j) {
  StepTree t{dyadic(j, "prob"), term(j, "term"), {}};
  const Json& children = field(j, "children");
  if (!children.is_array()) bad("'children' is not an array");
  for (const auto& c : children) t.children.push_back(stepTreeFromJson(c));
  return t;
}

namespace {

void renderStep(const StepTree& t, unsigned depth, std::string& out) {
  out += indent(depth) + t.prob.toString() + "\t" + print(t.term) + "\n";
  for (const auto& c : t.children) renderStep(c, depth + 1, out);
}

}  // namespace

std::string renderText(const StepTree& t) {
  std::string out;
  renderStep(t, 0, out);
  return out;
}

Json convergenceTableJson(const std::vector<Distr>& rows) {
  Json table = Json::array();
  for (std::size_t n = 0; n < rows.size(); ++n) {
    Json row = toJson(rows[n]);
    row["steps"] = n;
    table.push_back(row);
  }
  return table;
}

std::string renderConvergenceText(const std::vector<Distr>& rows) {
  std::ostringstream out;
  for (std::size_t n = 0; n < rows.size(); ++n) {
    out << "steps " << n << ": mass " << rows[n].mass().toString();
    for (const auto& [t, w] : sortedEntries(rows[n])) out << "  " << print(t) << ":" << w.toString();
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Trees

namespace {

Json valueTreeJson(const ValueTree& vt, const Dyadic& w) {
  Json args = Json::array();
  for (const auto& a : vt.args) args.push_back(toJson(a));
  Json j = {{"weight", w.toString()}, {"binders", vt.binders}, {"head", displayName(vt.head)}, {"args", args}};
  if (isBinderName(vt.head)) {
    auto dot = vt.head.find('.');
    j["headBinder"] = {{"depth", std::stoul(vt.head.substr(1, dot - 1))},
                       {"position", std::stoul(vt.head.substr(dot + 1))}};
  }
  return j;
}

std::string binderList(const ValueTree& vt) {
  std::string out = "\\";
  for (unsigned i = 1; i <= vt.binders; ++i) out += displayName(binderName(vt.depth, i)) + " ";
  return out + "...";
}

void renderProb(const ProbTree& t, unsigned depth, std::string& out) {
  if (t.weights.empty()) {
    out += indent(depth) + "bottom\n";
    return;
  }
  for (const auto& [vt, w] : t.weights) {
    out += indent(depth) + w.toString() + "\t" + binderList(vt) + " " + displayName(vt.head) + "\n";
    for (std::size_t i = 0; i < vt.args.size(); ++i) {
      out += indent(depth + 1) + "child " + std::to_string(i + 1) + "\n";
      renderProb(vt.args[i], depth + 2, out);
    }
    if (vt.level >= 2) {
      out += indent(depth + 1) + "children " + std::to_string(vt.args.size() + 1) + "..: eta tail\n";
    }
  }
  if (!t.deficit.isZero()) out += indent(depth) + "deficit " + t.deficit.toString() + "\n";
}

}  // namespace

Json toJson(const ProbTree& t) {
  Json trees = Json::array();
  for (const auto& [vt, w] : t.weights) trees.push_back(valueTreeJson(vt, w));
  return {{"level", t.level}, {"deficit", t.deficit.toString()}, {"trees", trees}};
}

ProbTree probTreeFromJson(const Json& j, unsigned depth) {
  ProbTree pt;
  pt.level = natural(j, "level");
  pt.deficit = dyadic(j, "deficit");
  const Json& trees = field(j, "trees");
  if (!trees.is_array()) bad("'trees' is not an array");
  for (const auto& e : trees) {
    ValueTree vt;
    vt.level = pt.level;
    vt.depth = depth;
    vt.binders = natural(e, "binders");
    if (e.contains("headBinder")) {
      const Json& hb = e.at("headBinder");
      unsigned d = natural(hb, "depth");
      if (d > depth) bad("head refers to a binder below its node");
      vt.head = binderName(d, natural(hb, "position"));
    } else {
      vt.head = str(e, "head");
    }
    const Json& args = field(e, "args");
    if (!args.is_array()) bad("'args' is not an array");
    for (const auto& a : args) {
      vt.args.push_back(probTreeFromJson(a, depth + 1));
      if (vt.args.back().level + 1 != pt.level) bad("child level is not one less than its parent");
    }
    pt.weights.emplace_back(std::move(vt), dyadic(e, "weight"));
  }
  std::sort(pt.weights.begin(), pt.weights.end(),
            [](const auto& a, const auto& b) { return compareValueTrees(a.first, b.first) < 0; });
  return pt;
}

std::string renderText(const ProbTree& t) {
  std::string out = "level " + std::to_string(t.level) + ", mass " + t.mass().toString() + "\n";
  renderProb(t, 0, out);
  return out;
}

namespace {

std::string kindName(TreeVerdictKind k) {
  switch (k) {
    case TreeVerdictKind::Equal: return "equal";
    case TreeVerdictKind::Different: return "different";
    case TreeVerdictKind::Unknown: return "unknown";
  }
  return "unknown";
}

}  // namespace

Json toJson(const TreeVerdict& v) {
  Json j = {{"verdict", kindName(v.kind)}};
  if (v.kind == TreeVerdictKind::Different) {
    j["path"] = v.path;
    j["leftWeight"] = v.leftWeight.toString();
    j["rightWeight"] = v.rightWeight.toString();
  } else if (v.kind == TreeVerdictKind::Unknown) {
    j["path"] = v.path;
    j["bound"] = v.bound.toString();
  }
  return j;
}

std::string renderText(const TreeVerdict& v) {
  std::string out = kindName(v.kind);
  if (v.kind == TreeVerdictKind::Different) {
    out += " at path [";
    for (std::size_t i = 0; i < v.path.size(); ++i) out += (i ? "," : "") + std::to_string(v.path[i]);
    out += "]: " + v.leftWeight.toString() + " vs " + v.rightWeight.toString();
  } else if (v.kind == TreeVerdictKind::Unknown) {
    out += ", unaccounted mass " + v.bound.toString();
  }
  return out + "\n";
}

// ---------------------------------------------------------------------------
// Games

namespace {

const char* ruleName(GameRule r) {
  switch (r) {
    case GameRule::TotalMass: return "total-mass";
    case GameRule::BlockMass: return "block-mass";
    case GameRule::Forced: return "forced";
    case GameRule::Apply: return "apply";
  }
  return "";
}

GameRule ruleFromName(const std::string& s) {
  for (GameRule r : {GameRule::TotalMass, GameRule::BlockMass, GameRule::Forced, GameRule::Apply}) {
    if (s == ruleName(r)) return r;
  }
  bad("unknown rule '" + s + "'");
}

Json optionalState(const std::optional<MarkovState>& s) { return s ? toJson(*s) : Json(nullptr); }

std::optional<MarkovState> optionalStateFromJson(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_null()) return std::nullopt;
  return markovStateFromJson(v);
}

void renderCertificate(const Certificate& c, unsigned depth, std::string& out) {
  out += indent(depth) + ruleName(c.rule);
  if (c.rule == GameRule::Apply) out += " " + c.label.toString();
  out += ": " + (c.left ? c.left->toString() : std::string("-")) + "  vs  " +
         (c.right ? c.right->toString() : std::string("-"));
  if (c.rule != GameRule::Apply) {
    out += "  [" + c.lower.toString() + " > " + c.upper.toString();
    if (c.pivot) out += " on " + c.pivot->toString() + (c.pivotOnRight ? " (right)" : " (left)");
    out += "]";
  }
  out += "\n";
  for (const auto& ch : c.children) renderCertificate(ch, depth + 1, out);
}

}  // namespace

Json toJson(const MarkovState& s) {
  return {{"kind", s.isHnf() ? "hnf" : "term"}, {"term", print(s.closed())}};
}

MarkovState markovStateFromJson(const Json& j) {
  std::string kind = str(j, "kind");
  Term t = term(j, "term");
  if (!isClosed(t)) bad("state term is not closed");
  if (kind == "term") return MarkovState::termState(t);
  if (kind != "hnf") bad("unknown state kind '" + kind + "'");
  if (!t.isLam()) bad("hnf state is not an abstraction");
  return MarkovState::hnfState(t.body());
}

Json toJson(const Certificate& c) {
  Json children = Json::array();
  for (const auto& ch : c.children) children.push_back(toJson(ch));
  return {{"rule", ruleName(c.rule)},
          {"left", optionalState(c.left)},
          {"right", optionalState(c.right)},
          {"label", c.label.toString()},
          {"pivotOnRight", c.pivotOnRight},
          {"pivot", optionalState(c.pivot)},
          {"lower", c.lower.toString()},
          {"upper", c.upper.toString()},
          {"children", children}};
}

Certificate certificateFromJson(const Json& j) {
  Certificate c;
  c.rule = ruleFromName(str(j, "rule"));
  c.left = optionalStateFromJson(j, "left");
  c.right = optionalStateFromJson(j, "right");
  std::string label = str(j, "label");
  c.label = label == "tau" ? TransitionLabel::tau() : TransitionLabel::apply(parse(label));
  const Json& onRight = field(j, "pivotOnRight");
  if (!onRight.is_boolean()) bad("'pivotOnRight' is not a boolean");
  c.pivotOnRight = onRight.get<bool>();
  c.pivot = optionalStateFromJson(j, "pivot");
  c.lower = dyadic(j, "lower");
  c.upper = dyadic(j, "upper");
  const Json& children = field(j, "children");
  if (!children.is_array()) bad("'children' is not an array");
  for (const auto& ch : children) c.children.push_back(certificateFromJson(ch));
  return c;
}

std::string renderText(const Certificate& c) {
  std::string out;
  renderCertificate(c, 0, out);
  return out;
}

Json gameVerdictJson(const std::optional<Certificate>& c) {
  if (!c) return {{"verdict", "none"}};
  Json trace = Json::array();
  for (const auto& l : c->primaryLabels()) trace.push_back(l.toString());
  const Certificate& leaf = c->primaryLeaf();
  return {{"verdict", "refuted"},
          {"trace", trace},
          {"separation", {{"lower", leaf.lower.toString()}, {"upper", leaf.upper.toString()}}},
          {"certificate", toJson(*c)}};
}

// ---------------------------------------------------------------------------
// Applicative comparison

std::string verdictName(AppVerdict v) {
  switch (v) {
    case AppVerdict::LeftExceeds: return "left-exceeds";
    case AppVerdict::RightExceeds: return "right-exceeds";
    case AppVerdict::Inconclusive: return "inconclusive";
  }
  return "";
}

Json toJson(const std::vector<AppRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json args = Json::array();
    for (const auto& a : r.args) args.push_back(print(a));
    out.push_back({{"args", args},
                   {"left", {{"lower", r.leftLower.toString()}, {"upper", r.leftUpper.toString()}}},
                   {"right", {{"lower", r.rightLower.toString()}, {"upper", r.rightUpper.toString()}}},
                   {"verdict", verdictName(r.verdict)}});
  }
  return {{"rows", out}};
}

std::string renderText(const std::vector<AppRow>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string args;
    for (const auto& a : r.args) args += (args.empty() ? "" : ", ") + print(a);
    if (args.empty()) args = "(none)";
    out << args << "\t[" << r.leftLower.toString() << ", " << r.leftUpper.toString() << "] vs ["
        << r.rightLower.toString() << ", " << r.rightUpper.toString() << "]\t" << verdictName(r.verdict)
        << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Assignments

mpq_class rationalFromString(const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto digits = [](const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
  };
  if (!digits(num) || !digits(den)) throw std::invalid_argument("not a rational: '" + text + "'");
  mpq_class q{mpz_class(num), mpz_class(den)};
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

AssignmentProblem assignmentProblemFromJson(const Json& j) {
  AssignmentProblem p;
  const Json& ps = field(j, "p");
  if (!ps.is_array()) bad("'p' is not an array");
  for (const auto& x : ps) {
    if (!x.is_string()) bad("entries of 'p' must be strings");
    p.p.push_back(rationalFromString(x.get<std::string>()));
  }
  if (j.contains("r")) {
    const Json& rs = j.at("r");
    if (!rs.is_object()) bad("'r' is not an object");
    for (const auto& [key, value] : rs.items()) {
      if (!value.is_string()) bad("entries of 'r' must be strings");
      Subset s = subsetFromString(key);
      if (s == 0) bad("'r' names the empty subset");
      if (p.r.count(s)) bad("subset " + key + " listed twice");
      p.r[s] = rationalFromString(value.get<std::string>());
    }
  }
  return p;
}

Json toJson(const AssignmentProblem& p) {
  Json ps = Json::array();
  for (const auto& x : p.p) ps.push_back(x.get_str());
  Json rs = Json::object();
  for (const auto& [s, m] : p.r) rs[subsetToString(s)] = m.get_str();
  return {{"p", ps}, {"r", rs}};
}

Json toJson(const std::variant<AssignmentSolution, Infeasible>& r) {
  if (const auto* inf = std::get_if<Infeasible>(&r)) {
    return {{"feasible", false}, {"witness", subsetToString(inf->witness)}};
  }
  Json shares = Json::array();
  for (const auto& [key, v] : std::get<AssignmentSolution>(r).s) {
    shares.push_back({{"element", key.first}, {"subset", subsetToString(key.second)}, {"share", v.get_str()}});
  }
  return {{"feasible", true}, {"shares", shares}};
}

std::string renderText(const std::variant<AssignmentSolution, Infeasible>& r) {
  if (const auto* inf = std::get_if<Infeasible>(&r)) {
    return "infeasible, witness " + subsetToString(inf->witness) + "\n";
  }
  std::string out = "feasible\n";
  for (const auto& [key, v] : std::get<AssignmentSolution>(r).s) {
    out += "s(" + std::to_string(key.first) + ", " + subsetToString(key.second) + ") = " + v.get_str() + "\n";
  }
  return out;
}

}  // namespace plam
