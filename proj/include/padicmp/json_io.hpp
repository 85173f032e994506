#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "padicmp/class_poset.hpp"
#include "padicmp/error.hpp"
#include "padicmp/finite_space.hpp"
#include "padicmp/function_spec.hpp"
#include "padicmp/metric_checks.hpp"
#include "padicmp/padic.hpp"
#include "padicmp/padic_preserve.hpp"
#include "padicmp/rational.hpp"

// JSON encoding of every value the command line reads or prints. Keys keep
// insertion order and rationals are canonical strings, so output is
// byte-for-byte reproducible.
namespace padicmp::json {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void bad(const std::string& what) { fail(ErrorCode::ParseError, what); }

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

// ---- scalars ---------------------------------------------------------------

inline Json to_json(const Rational& x) { return x.str(); }

/// Accepts "a", "a/b" or a JSON integer.
inline Rational rational_from(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  bad("expected a rational string, got " + j.dump());
}

inline Json to_json(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_json(x));
  return a;
}

inline std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from(e));
  return out;
}

inline std::uint64_t u64_from(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

inline Prime prime_from(const Json& j) { return Prime(u64_from(j, "p")); }

inline Json to_json(const DigitWindow& w) {
  Json d = Json::array();
  for (auto v : w.digits) d.push_back(v);
  return Json{{"p", w.p.value()}, {"low", w.low}, {"digits", d}};
}

// ---- functions -------------------------------------------------------------

inline Json points_json(const std::vector<fn::Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(Json::array({to_json(p.x), to_json(p.y)}));
  return a;
}

inline std::vector<fn::Point> points_from(const Json& j) {
  if (!j.is_array()) bad("points must be an array of [x, y] pairs");
  std::vector<fn::Point> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) bad("each point must be a pair [x, y]");
    out.push_back({rational_from(e[0]), rational_from(e[1])});
  }
  return out;
}

inline Json to_json(const FunctionSpec& f) {
  Json j{{"kind", std::string(f.kind())}};
  std::visit(detail::overloaded{
                 [&](const fn::Tabulated& t) {
                   Json a = Json::array();
                   for (const auto& [x, y] : t.table) a.push_back(Json::array({to_json(x), to_json(y)}));
                   j["table"] = a;
                 },
                 [&](const fn::PiecewiseLinear& pl) {
                   j["points"] = points_json(pl.points);
                   if (pl.tail == fn::Tail::Constant) {
                     j["tail"] = Json{{"constant", to_json(pl.points.back().y)}};
                   } else {
                     j["tail"] = "linear";
                   }
                 },
                 [&](const fn::Reciprocal&) {},
                 [&](const fn::Canonical&) {},
                 [&](const fn::PowerMap& m) {
                   j["p"] = m.p.value();
                   j["q"] = m.q.value();
                 },
                 [&](const fn::PrimeShift& s) { j["bound"] = s.bound; },
                 [&](const fn::StepPsi& s) {
                   j["inner"] = to_json(*s.inner);
                   j["p"] = s.p.value();
                 },
                 [&](const fn::Step& s) {
                   j["below"] = to_json(s.below);
                   j["steps"] = points_json(s.steps);
                 },
             },
             f.variant());
  return j;
}

inline FunctionSpec function_from(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "tabulated") {
    std::map<Rational, Rational> t;
    for (const auto& p : points_from(field(j, "table"))) {
      if (!t.emplace(p.x, p.y).second) fail(ErrorCode::InvalidSpec, "duplicate table key " + p.x.str());
    }
    return tabulated(std::move(t));
  }
  if (kind == "piecewise_linear") {
    auto pts = points_from(field(j, "points"));
    fn::Tail tail = fn::Tail::Constant;
    if (j.contains("tail")) {
      const Json& t = j.at("tail");
      if (t == "linear") {
        tail = fn::Tail::LinearContinuation;
      } else if (t.is_object() && t.contains("constant")) {
        Rational c = rational_from(t.at("constant"));
        if (pts.empty() || c != pts.back().y) {
          fail(ErrorCode::InvalidSpec, "constant tail must equal the last ordinate");
        }
      } else {
        bad("tail must be \"linear\" or {\"constant\": value}");
      }
    }
    return piecewise_linear(std::move(pts), tail);
  }
  if (kind == "reciprocal") return reciprocal();
  if (kind == "canonical") return canonical();
  if (kind == "identity") return identity();
  if (kind == "power_map") return prime_swap(prime_from(field(j, "p")), Prime(u64_from(field(j, "q"), "q")));
  if (kind == "prime_shift") {
    std::uint64_t b = j.contains("bound") ? u64_from(j.at("bound"), "bound") : 1'000'000;
    if (b > 0xffffffffULL) fail(ErrorCode::InvalidSpec, "bound too large");
    return prime_shift(static_cast<std::uint32_t>(b));
  }
  if (kind == "psi_step") return psi_step(function_from(field(j, "inner")), prime_from(field(j, "p")));
  if (kind == "step") return step_function(rational_from(field(j, "below")), points_from(field(j, "steps")));
  fail(ErrorCode::InvalidSpec, "unknown function kind '" + kind + "'");
}

// ---- verdicts --------------------------------------------------------------

inline Json witness_json(const Witness& w) { return Json{{"args", to_json(w.args)}, {"images", to_json(w.images)}}; }

inline Json to_json(const TripletVerdict& v) {
  Json j{{"passed", v.passed}, {"reason", std::string(to_string(v.reason))}};
  if (v.witness) j["witness"] = witness_json(*v.witness);
  j["samples"] = v.sample_count;
  j["sample_hash"] = v.sample_hash;
  return j;
}

inline Json to_json(const PreservationVerdict& v) {
  Json j{{"passed", v.passed}, {"window", v.window.str()}, {"reason", std::string(to_string(v.reason))}};
  if (v.witness) {
    Json w;
    if (v.m) w["m"] = *v.m;
    if (v.n) w["n"] = *v.n;
    if (v.witness->args.size() == 3) {
      w["triple"] = to_json(v.witness->args);
    } else {
      w["args"] = to_json(v.witness->args);
    }
    w["images"] = to_json(v.witness->images);
    j["witness"] = w;
  }
  return j;
}

inline Json to_json(const SufficientReport& r) {
  return Json{{"band", r.band},
              {"concave", r.concave},
              {"subadditive_on_samples", r.subadditive_on_samples},
              {"sample_hash", r.sample_hash}};
}

// ---- spaces ----------------------------------------------------------------

inline Json to_json(const DistanceMatrix& m) {
  Json points = Json::array();
  for (const auto& l : m.labels()) points.push_back(l);
  Json d = Json::array();
  for (const auto& row : m.matrix()) d.push_back(to_json(row));
  return Json{{"points", points}, {"d", d}};
}

inline Json to_json(const FiniteUltrametricSpace& s) { return to_json(s.distances()); }

inline DistanceMatrix matrix_from(const Json& j) {
  const Json& d = field(j, "d");
  if (!d.is_array()) bad("d must be an array of rows");
  Matrix m;
  for (const auto& row : d) m.push_back(rationals_from(row));
  if (!j.contains("points")) return DistanceMatrix(std::move(m));
  std::vector<std::string> labels;
  for (const auto& l : j.at("points")) {
    if (!l.is_string()) bad("point labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return DistanceMatrix(std::move(labels), std::move(m));
}

inline FiniteUltrametricSpace space_from(const Json& j) { return FiniteUltrametricSpace::from(matrix_from(j)); }

inline Json issue_json(const DistanceMatrix& m, const MatrixIssue& issue) {
  Json at = Json::array({m.labels()[issue.i], m.labels()[issue.j]});
  if (issue.k) at.push_back(m.labels()[*issue.k]);
  Json j{{"code", std::string(to_string(issue.code))}, {"at", at}};
  if (issue.code == ErrorCode::NotUltrametric) {
    j["values"] = to_json(std::vector<Rational>{m(issue.i, issue.j), m(issue.i, *issue.k), m(*issue.k, issue.j)});
  }
  return j;
}

inline Json to_json(const std::vector<std::size_t>& perm, const FiniteUltrametricSpace& a,
                    const FiniteUltrametricSpace& b) {
  Json j = Json::object();
  for (std::size_t i = 0; i < perm.size(); ++i) j[a.labels()[i]] = b.labels()[perm[i]];
  return j;
}

// ---- classes ---------------------------------------------------------------

inline Json to_json(const SpaceClass& u) {
  Json a = Json::array();
  for (const auto& s : u.spaces()) a.push_back(to_json(s));
  return Json{{"spaces", a}};
}

inline SpaceClass class_from(const Json& j) {
  const Json& a = field(j, "spaces");
  if (!a.is_array()) bad("spaces must be an array");
  std::vector<FiniteUltrametricSpace> spaces;
  for (const auto& s : a) spaces.push_back(space_from(s));
  return SpaceClass(std::move(spaces));
}

inline Json to_json(const FiniteRelation& r) {
  Json pairs = Json::array();
  for (const auto& [s, t] : r.pairs(false)) pairs.push_back(Json::array({to_json(s), to_json(t)}));
  return Json{{"ground", to_json(r.ground())}, {"pairs", pairs}};
}

inline Json to_json(const FinitePoset& p) { return to_json(p.order()); }

inline Json to_json(const ClassReport& r, const SpaceClass& u) {
  Json j{{"preserving", r.preserving}, {"spaces_side", r.spaces_side}, {"order_side", r.order_side}};
  if (r.space_witness) {
    const auto& w = *r.space_witness;
    j["space_witness"] = Json{{"space", *w.space}};
    if (w.issue) {
      // Labels come from the space; the offending values are f o d entries.
      j["space_witness"]["issue"] = Json{{"code", std::string(to_string(w.issue->code))}};
      Json at = Json::array({u.spaces()[*w.space].labels()[w.issue->i], u.spaces()[*w.space].labels()[w.issue->j]});
      if (w.issue->k) at.push_back(u.spaces()[*w.space].labels()[*w.issue->k]);
      j["space_witness"]["issue"]["at"] = at;
    }
  }
  if (r.order_witness) j["order_witness"] = witness_json(Witness{r.order_witness->args, r.order_witness->images});
  return j;
}

inline Json error_json(const Error& e) {
  std::string msg = e.what();
  auto colon = msg.find(": ");
  if (colon != std::string::npos) msg = msg.substr(colon + 2);
  return Json{{"error", std::string(to_string(e.code()))}, {"message", msg}};
}

}  // namespace padicmp::json
