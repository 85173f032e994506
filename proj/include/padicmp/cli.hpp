#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padicmp/class_poset.hpp"
#include "padicmp/finite_space.hpp"
#include "padicmp/fixtures.hpp"
#include "padicmp/function_spec.hpp"
#include "padicmp/json_io.hpp"
#include "padicmp/metric_checks.hpp"
#include "padicmp/padic.hpp"
#include "padicmp/padic_preserve.hpp"
#include "padicmp/triplets.hpp"

namespace padicmp::cli {

using json::Json;

/// Exit 0: ran and the property holds (or a plain query). Exit 1: the
/// property fails and `payload` carries a witness. Exit 2: bad input.
struct CommandResult {
  int exit_code = 0;
  Json payload;
  std::string help;  ///< set instead of payload for --help

  std::string text() const { return help.empty() ? payload.dump() : help; }
};

/// One worked example from the literature, checked end to end.
struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline Rational q(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

inline std::vector<Rational> parse_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(Rational::parse(item));
  }
  return out;
}

template <class Pred>
FixtureResult fixture(std::string name, Pred&& check) {
  FixtureResult r{std::move(name), false, {}};
  try {
    r.passed = check(r.detail);
  } catch (const Error& e) {
    r.detail = e.what();
  }
  return r;
}

}  // namespace detail

/// Every worked example that the library is expected to reproduce.
inline std::vector<FixtureResult> reproduce_examples() {
  using detail::fixture;
  using detail::q;
  using fixtures::euclid_sawtooth;
  using fixtures::four_point_space;
  using fixtures::four_point_swap;
  std::vector<FixtureResult> out;

  out.push_back(fixture("abs.25_18", [](std::string&) {
    Rational x = q(25, 18);
    return padic_abs(x, Prime(2)).value() == q(2) && padic_abs(x, Prime(3)).value() == q(9) &&
           padic_abs(x, Prime(5)).value() == q(1, 25) && padic_abs(x, Prime(7)).value() == q(1) &&
           ord(x, Prime(3)) == -2 && ord(x, Prime(7)) == 0;
  }));
  out.push_back(fixture("dist.3adic_halves_thirds", [](std::string&) {
    return dp(q(1, 2), q(1, 3), Prime(3)) == q(3) && dp(q(1, 2), q(1, 4), Prime(3)) == q(1);
  }));
  out.push_back(fixture("digits.17_base3", [](std::string& d) {
    auto w = digits(q(17), Prime(3), 4);
    d = w.str();
    return w.str() == "122" && w.digits == std::vector<std::uint64_t>{2, 2, 1, 0, 0};
  }));
  out.push_back(fixture("digits.minus_one_base3", [](std::string&) {
    return digits(q(-1), Prime(3), 6).digits == std::vector<std::uint64_t>(7, 2);
  }));
  out.push_back(fixture("digits.half_base3", [](std::string&) {
    return digits(q(1, 2), Prime(3), 6).digits == std::vector<std::uint64_t>{2, 1, 1, 1, 1, 1, 1};
  }));
  out.push_back(fixture("cauchy.tenths_7adic", [](std::string&) {
    std::vector<Rational> a;
    for (long long n = 1; n <= 5; ++n) a.push_back(power(std::uint64_t{10}, -n));
    for (const auto& t : cauchy_profile(a, Prime(7))) {
      if (t < q(1, 9)) return false;
    }
    return true;
  }));
  out.push_back(fixture("sawtooth.value_at_3", [](std::string&) {
    return euclid_sawtooth()(dp(q(1, 2), q(1, 3), Prime(3))) == q(1, 8);
  }));
  out.push_back(fixture("triplet.1_1_4", [](std::string&) { return !is_triangle_triplet(q(1), q(1), q(4)); }));
  out.push_back(fixture("triplet.eighth_eighth_1", [](std::string&) {
    return !is_triangle_triplet(q(1, 8), q(1, 8), q(1));
  }));
  out.push_back(fixture("triplet.strong_1_3_3", [](std::string&) { return is_strong_triplet(q(1), q(3), q(3)); }));
  out.push_back(fixture("four_point.swap_not_increasing", [](std::string&) {
    auto v = check_ultrametric_preserving(four_point_swap(), SampleSet(std::vector<Rational>{q(0), q(1), q(2), q(3)}));
    return !v.passed && v.witness->args == std::vector<Rational>{q(1), q(2)} &&
           v.witness->images == std::vector<Rational>{q(2), q(1)};
  }));
  out.push_back(fixture("sawtooth.euclid_grid", [](std::string& d) {
    auto v = check_euclid_preserving_sampled(euclid_sawtooth(), all_pairs(grid(q(1, 8), q(8))));
    if (v.witness) d = json::to_json(v).dump();
    return v.passed;
  }));
  out.push_back(fixture("witness.p2_k1", [](std::string&) {
    auto [x, y, z] = witness_triple(Prime(2), 0, -1);
    return x == q(1) && y == q(-1) && z == q(0);
  }));
  out.push_back(fixture("reciprocal.not_2adic_metric", [](std::string&) {
    auto v = check_p_metric_preserving(reciprocal(), Prime(2), ExponentWindow(-5, 5));
    return !v.passed && v.witness->images == std::vector<Rational>{q(1), q(1), q(4)} &&
           reverify(reciprocal(), Prime(2), v);
  }));
  out.push_back(fixture("sawtooth.not_3adic_ultrametric", [](std::string&) {
    auto v = check_p_ultrametric_preserving(euclid_sawtooth(), Prime(3), ExponentWindow(-2, 2));
    return !v.passed && v.m == 0 && v.n == 1 && euclid_sawtooth()(q(1)) == q(1) && euclid_sawtooth()(q(3)) == q(1, 8);
  }));
  out.push_back(fixture("sawtooth.not_3adic_metric", [](std::string&) {
    const auto f = euclid_sawtooth();
    const Prime p(3);
    auto v = check_p_metric_preserving(f, p, ExponentWindow(-2, 2));
    std::vector<Rational> quoted{f(dp(q(1, 2), q(1, 3), p)), f(dp(q(1, 3), q(1, 4), p)), f(dp(q(1, 2), q(1, 4), p))};
    std::vector<Rational> want{q(1, 8), q(1, 8), q(1)};
    return !v.passed && v.witness->images == want && quoted == want;
  }));
  out.push_back(fixture("sawtooth.extension_rejected", [](std::string&) {
    try {
      extend_to_ultrametric_preserving(euclid_sawtooth(), Prime(3), ExponentWindow(-2, 2));
    } catch (const Error& e) {
      return e.code() == ErrorCode::NotPreserving;
    }
    return false;
  }));
  out.push_back(fixture("prime_swap.2_3_at_4", [](std::string&) {
    return prime_swap(Prime(2), Prime(3))(q(4)) == q(9);
  }));
  out.push_back(fixture("prime_shift.values", [](std::string&) {
    auto f = prime_shift();
    return f(q(4)) == q(9) && f(q(5)) == q(7);
  }));
  out.push_back(fixture("four_point.space_valid", [](std::string&) {
    return !find_ultrametric_issue(four_point_space().distances());
  }));
  out.push_back(fixture("four_point.image_ultrametric", [](std::string&) {
    auto img = apply_fn(four_point_space(), four_point_swap());
    return !find_ultrametric_issue(img) &&
           range(FiniteUltrametricSpace::from(img)) == std::vector<Rational>{q(0), q(1), q(2), q(3)};
  }));
  out.push_back(fixture("four_point.range", [](std::string&) {
    return range(four_point_space()) == std::vector<Rational>{q(0), q(1), q(2), q(3)};
  }));
  out.push_back(fixture("four_point.cyclic_isometry", [](std::string&) {
    auto img = FiniteUltrametricSpace::from(apply_fn(four_point_space(), four_point_swap()));
    auto found = isometry_search(four_point_space(), img);
    return found && is_isometry(four_point_space(), img, {1, 2, 3, 0});
  }));
  out.push_back(fixture("four_point.tetrahedron_isometric", [](std::string&) {
    return isometry_search(fixtures::four_point_tetrahedron(), four_point_space()).has_value();
  }));
  out.push_back(fixture("four_point.embed_dim", [](std::string&) {
    return embed_min_dimension(four_point_space()) == 3 && gram_rank(four_point_space()) == 3;
  }));
  out.push_back(fixture("four_point.class_range", [](std::string&) {
    return ran_u(SpaceClass({four_point_space()})) == std::vector<Rational>{q(0), q(1), q(2), q(3)};
  }));
  out.push_back(fixture("four_point.class_order", [](std::string&) {
    auto p = poset_u(SpaceClass({four_point_space()}));
    std::vector<std::pair<Rational, Rational>> want{{q(0), q(1)}, {q(0), q(2)}, {q(0), q(3)}, {q(1), q(3)}, {q(2), q(3)}};
    return p.order().pairs(false) == want && !p.comparable(q(1), q(2));
  }));
  out.push_back(fixture("four_point.swap_preserves_class", [](std::string&) {
    return check_class_preserving(four_point_swap(), SpaceClass({four_point_space()})).preserving;
  }));
  return out;
}

namespace detail {

struct Options {
  std::optional<std::uint64_t> p, q;
  std::optional<std::string> x, y, window, spec, file, samples, triple, step, upto;
  std::optional<long long> high, m, n;
  std::optional<std::uint32_t> bound;
};

class Runner {
 public:
  Runner(const Options& o, std::istream& in) : o_(o), in_(in) {}

  Prime p() const {
    if (!o_.p) fail(ErrorCode::ParseError, "--p is required");
    return Prime(*o_.p);
  }
  Rational x() const { return rational("--x", o_.x); }
  Rational y() const { return rational("--y", o_.y); }
  ExponentWindow window() const { return o_.window ? ExponentWindow::parse(*o_.window) : ExponentWindow(); }

  /// Document from --file (path or "-").
  Json document() const {
    if (!o_.file) fail(ErrorCode::ParseError, "--file is required");
    std::string text;
    if (*o_.file == "-") {
      text.assign(std::istreambuf_iterator<char>(in_), std::istreambuf_iterator<char>());
    } else {
      std::ifstream f(*o_.file);
      if (!f) fail(ErrorCode::ParseError, "cannot open " + *o_.file);
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    return parse(text);
  }

  /// Function from --spec, or from --file when no --spec is given.
  FunctionSpec function() const {
    if (o_.spec) return json::function_from(parse(*o_.spec));
    if (o_.file) return json::function_from(document());
    fail(ErrorCode::ParseError, "--spec is required");
  }

  SampleSet samples(const FunctionSpec& f) const {
    if (o_.samples) return SampleSet(parse_list(*o_.samples));
    return default_samples(f);
  }

  const Options& opts() const { return o_; }

 private:
  static Rational rational(const char* flag, const std::optional<std::string>& v) {
    if (!v) fail(ErrorCode::ParseError, std::string(flag) + " is required");
    return Rational::parse(*v);
  }

  static Json parse(const std::string& text) {
    try {
      return Json::parse(text);
    } catch (const Json::exception& e) {
      fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
  }

  const Options& o_;
  std::istream& in_;
};

inline CommandResult ok(Json j) { return {0, std::move(j), {}}; }
inline CommandResult verdict(bool passed, Json j) { return {passed ? 0 : 1, std::move(j), {}}; }

using Handler = std::function<CommandResult(const Runner&)>;

struct Verb {
  std::string group, name, help;
  std::vector<std::string> flags;
  Handler run;
};

inline std::vector<Verb> verbs() {
  std::vector<Verb> v;

  // padic
  v.push_back({"padic", "abs", "p-adic absolute value of x", {"p", "x"}, [](const Runner& r) {
                 return ok(Json{{"value", json::to_json(padic_abs(r.x(), r.p()).value())}});
               }});
  v.push_back({"padic", "ord", "p-adic valuation of x", {"p", "x"}, [](const Runner& r) {
                 return ok(Json{{"value", ord(r.x(), r.p())}});
               }});
  v.push_back({"padic", "dist", "p-adic distance between x and y", {"p", "x", "y"}, [](const Runner& r) {
                 return ok(Json{{"value", json::to_json(dp(r.x(), r.y(), r.p()))}});
               }});
  v.push_back({"padic", "digits", "p-adic digits of x up to index --high", {"p", "x", "high"}, [](const Runner& r) {
                 auto w = digits(r.x(), r.p(), r.opts().high.value_or(11));
                 Json j = json::to_json(w);
                 j["text"] = w.str();
                 return ok(j);
               }});

  // fn
  v.push_back({"fn", "eval", "evaluate a function at x", {"spec", "file", "x"}, [](const Runner& r) {
                 return ok(Json{{"value", json::to_json(r.function()(r.x()))}});
               }});
  v.push_back({"fn", "triplet", "triangle and strong-triangle membership of a,b,c", {"triple"}, [](const Runner& r) {
                 if (!r.opts().triple) fail(ErrorCode::ParseError, "--triple a,b,c is required");
                 auto t = parse_list(*r.opts().triple);
                 if (t.size() != 3) fail(ErrorCode::ParseError, "--triple needs exactly three values");
                 return ok(Json{{"triangle", is_triangle_triplet(t[0], t[1], t[2])},
                                {"strong", is_strong_triplet(t[0], t[1], t[2])}});
               }});
  v.push_back({"fn", "classify", "sampled metric / ultrametric checks, plus p-adic checks with --p",
               {"spec", "file", "samples", "p", "window"}, [](const Runner& r) {
                 auto f = r.function();
                 auto s = r.samples(f);
                 Json j{{"metric", json::to_json(check_metric_preserving_sampled(f, s))},
                        {"ultrametric", json::to_json(check_ultrametric_preserving(f, s))},
                        {"ultra_to_metric", json::to_json(check_ultra_to_metric(f, s))}};
                 if (r.opts().p) {
                   auto w = r.window();
                   j["padic_metric"] = json::to_json(check_p_metric_preserving(f, r.p(), w));
                   j["padic_ultrametric"] = json::to_json(check_p_ultrametric_preserving(f, r.p(), w));
                 }
                 return ok(j);
               }});
  v.push_back({"fn", "euclid", "sampled Euclid triplet check on a grid (default step 1/8 up to 8)",
               {"spec", "file", "step", "upto", "samples"}, [](const Runner& r) {
                 auto f = r.function();
                 std::vector<Rational> pts;
                 if (r.opts().samples) {
                   pts = parse_list(*r.opts().samples);
                 } else {
                   pts = grid(r.opts().step ? Rational::parse(*r.opts().step) : detail::q(1, 8),
                              r.opts().upto ? Rational::parse(*r.opts().upto) : detail::q(8));
                 }
                 auto v = check_euclid_preserving_sampled(f, all_pairs(pts));
                 return verdict(v.passed, json::to_json(v));
               }});
  v.push_back({"fn", "sufficient", "band, concavity and subadditivity on samples", {"spec", "file", "samples"},
               [](const Runner& r) {
                 auto f = r.function();
                 return ok(json::to_json(sufficient_conditions(f, r.samples(f))));
               }});
  v.push_back({"fn", "padic-check", "p-adic metric preservation over the exponent window",
               {"spec", "file", "p", "window"}, [](const Runner& r) {
                 auto v = check_p_metric_preserving(r.function(), r.p(), r.window());
                 return verdict(v.passed, json::to_json(v));
               }});
  v.push_back({"fn", "padic-ultra-check", "p-adic ultrametric preservation over the exponent window",
               {"spec", "file", "p", "window"}, [](const Runner& r) {
                 auto v = check_p_ultrametric_preserving(r.function(), r.p(), r.window());
                 return verdict(v.passed, json::to_json(v));
               }});
  v.push_back({"fn", "psi", "step function built from f on powers of p (evaluated at --x if given)",
               {"spec", "file", "p", "x"}, [](const Runner& r) {
                 auto g = psi_step(r.function(), r.p());
                 if (r.opts().x) return ok(Json{{"value", json::to_json(g(r.x()))}});
                 return ok(json::to_json(g));
               }});
  v.push_back({"fn", "extend", "increasing amenable step extension agreeing on powers of p",
               {"spec", "file", "p", "window"}, [](const Runner& r) {
                 return ok(json::to_json(extend_to_ultrametric_preserving(r.function(), r.p(), r.window())));
               }});
  v.push_back({"fn", "prime-swap", "f(p^n) = q^n (evaluated at --x if given)", {"p", "q", "x"},
               [](const Runner& r) {
                 if (!r.opts().q) fail(ErrorCode::ParseError, "--q is required");
                 auto f = prime_swap(r.p(), Prime(*r.opts().q));
                 if (r.opts().x) return ok(Json{{"value", json::to_json(f(r.x()))}});
                 return ok(json::to_json(f));
               }});
  v.push_back({"fn", "prime-shift", "F(p_k^n) = p_{k+1}^n (evaluated at --x if given)", {"bound", "x"},
               [](const Runner& r) {
                 auto f = prime_shift(r.opts().bound.value_or(1'000'000));
                 if (r.opts().x) return ok(Json{{"value", json::to_json(f(r.x()))}});
                 auto [lo, hi] = prime_shift_range(r.opts().bound.value_or(1'000'000));
                 Json j = json::to_json(f);
                 j["floor"] = json::to_json(lo);
                 j["ceiling"] = json::to_json(hi);
                 return ok(j);
               }});
  v.push_back({"fn", "witness", "rationals x, y, z with legs p^m and base p^n (n < m)", {"p", "m", "n"},
               [](const Runner& r) {
                 if (!r.opts().m || !r.opts().n) fail(ErrorCode::ParseError, "--m and --n are required");
                 auto p = r.p();
                 auto [x, y, z] = witness_triple(p, *r.opts().m, *r.opts().n);
                 return ok(Json{{"triple", json::to_json(std::vector<Rational>{x, y, z})},
                                {"distances", json::to_json(std::vector<Rational>{dp(x, z, p), dp(z, y, p), dp(x, y, p)})}});
               }});

  // space
  v.push_back({"space", "validate", "check the strong triangle inequality", {"file"}, [](const Runner& r) {
                 auto m = json::matrix_from(r.document());
                 if (auto issue = find_ultrametric_issue(m)) {
                   if (issue->code != ErrorCode::NotUltrametric) FiniteUltrametricSpace::from(m);
                   return verdict(false, Json{{"valid", false}, {"violation", json::issue_json(m, *issue)}});
                 }
                 return ok(Json{{"valid", true}, {"size", m.size()}});
               }});
  v.push_back({"space", "apply", "image f o d and whether it is an ultrametric", {"file", "spec"},
               [](const Runner& r) {
                 auto s = json::space_from(r.document());
                 auto img = apply_fn(s, r.function());
                 Json j{{"image", json::to_json(img)}};
                 auto issue = find_ultrametric_issue(img);
                 j["ultrametric"] = !issue.has_value();
                 if (issue) j["issue"] = json::issue_json(img, *issue);
                 return ok(j);
               }});
  v.push_back({"space", "range", "distinct distances, 0 included", {"file"}, [](const Runner& r) {
                 return ok(Json{{"range", json::to_json(range(json::space_from(r.document())))}});
               }});
  v.push_back({"space", "isometry", "least isometry between spaces \"a\" and \"b\"", {"file"}, [](const Runner& r) {
                 auto doc = r.document();
                 auto a = json::space_from(json::field(doc, "a"));
                 auto b = json::space_from(json::field(doc, "b"));
                 auto found = isometry_search(a, b);
                 Json j{{"isometric", found.has_value()}};
                 if (found) j["map"] = json::to_json(*found, a, b);
                 return ok(j);
               }});
  v.push_back({"space", "embed-dim", "least Euclidean dimension, with the Gram rank", {"file"}, [](const Runner& r) {
                 auto s = json::space_from(r.document());
                 return ok(Json{{"dimension", embed_min_dimension(s)}, {"gram_rank", gram_rank(s)}});
               }});

  // class
  v.push_back({"class", "ran", "union of distance sets", {"file"}, [](const Runner& r) {
                 return ok(Json{{"range", json::to_json(ran_u(json::class_from(r.document())))}});
               }});
  v.push_back({"class", "poset", "order generated by isosceles triangles", {"file"}, [](const Runner& r) {
                 auto p = poset_u(json::class_from(r.document()));
                 Json j = json::to_json(p);
                 j["total"] = is_totally_ordered(p);
                 return ok(j);
               }});
  v.push_back({"class", "check", "does f o d stay ultrametric on every space", {"file", "spec"}, [](const Runner& r) {
                 auto u = json::class_from(r.document());
                 auto rep = check_class_preserving(r.function(), u);
                 return verdict(rep.preserving, json::to_json(rep, u));
               }});
  v.push_back({"class", "extend", "increasing extension for a totally ordered class", {"file", "spec"},
               [](const Runner& r) {
                 return ok(json::to_json(build_extension(r.function(), json::class_from(r.document()))));
               }});
  v.push_back({"class", "counterexample", "preserving f with no increasing extension", {"file"}, [](const Runner& r) {
                 auto ce = counterexample_fn(json::class_from(r.document()));
                 return ok(Json{{"function", json::to_json(ce.f)},
                                {"x1", json::to_json(ce.x1)},
                                {"x2", json::to_json(ce.x2)}});
               }});
  v.push_back({"class", "compare", "compare classes \"a\" and \"b\"", {"file"}, [](const Runner& r) {
                 auto doc = r.document();
                 auto c = compare_classes(json::class_from(json::field(doc, "a")), json::class_from(json::field(doc, "b")));
                 return ok(Json{{"same_range", c.same_range}, {"same_order", c.same_order}});
               }});

  // examples
  v.push_back({"examples", "reproduce", "check every worked example", {}, [](const Runner&) {
                 Json list = Json::array();
                 Json failed = Json::array();
                 for (const auto& f : reproduce_examples()) {
                   Json e{{"name", f.name}, {"passed", f.passed}};
                   if (!f.detail.empty()) e["detail"] = f.detail;
                   list.push_back(e);
                   if (!f.passed) failed.push_back(f.name);
                 }
                 bool all = failed.empty();
                 return verdict(all, Json{{"passed", all}, {"failed", failed}, {"fixtures", list}});
               }});
  return v;
}

inline void add_flag(CLI::App* sub, const std::string& flag, Options& o) {
  if (flag == "p") sub->add_option("--p", o.p, "prime");
  if (flag == "q") sub->add_option("--q", o.q, "second prime");
  if (flag == "x") sub->add_option("--x", o.x, "rational, e.g. 25/18");
  if (flag == "y") sub->add_option("--y", o.y, "rational");
  if (flag == "window") sub->add_option("--window", o.window, "exponent window lo:hi (default -16:16)");
  if (flag == "spec") sub->add_option("--spec", o.spec, "function as JSON");
  if (flag == "file") sub->add_option("--file", o.file, "JSON input path, or - for stdin");
  if (flag == "samples") sub->add_option("--samples", o.samples, "comma-separated rationals including 0");
  if (flag == "triple") sub->add_option("--triple", o.triple, "a,b,c");
  if (flag == "step") sub->add_option("--step", o.step, "grid step");
  if (flag == "upto") sub->add_option("--upto", o.upto, "grid end");
  if (flag == "high") sub->add_option("--high", o.high, "highest digit index (default 11)");
  if (flag == "m") sub->add_option("--m", o.m, "leg exponent");
  if (flag == "n") sub->add_option("--n", o.n, "base exponent");
  if (flag == "bound") sub->add_option("--bound", o.bound, "prime enumeration bound");
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline CommandResult run(const std::vector<std::string>& args, std::istream& in = std::cin) {
  CLI::App app{"Exact p-adic and ultrametric preservation checks", "padicmp"};
  app.require_subcommand(1);
  detail::Options opts;
  auto verbs = detail::verbs();
  const std::map<std::string, std::string> about{{"padic", "p-adic absolute value, valuation, distance, digits"},
                                                 {"fn", "function evaluation and preservation checks"},
                                                 {"space", "finite ultrametric spaces"},
                                                 {"class", "classes of spaces and their distance posets"},
                                                 {"examples", "worked example fixtures"}};
  std::map<std::string, CLI::App*> groups;
  std::vector<std::pair<CLI::App*, const detail::Verb*>> leaves;
  for (const auto& v : verbs) {
    auto& g = groups[v.group];
    if (!g) {
      g = app.add_subcommand(v.group, about.at(v.group));
      g->require_subcommand(1);
    }
    auto* sub = g->add_subcommand(v.name, v.help);
    for (const auto& f : v.flags) detail::add_flag(sub, f, opts);
    leaves.emplace_back(sub, &v);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, {}, app.help()};
  } catch (const CLI::ParseError& e) {
    std::string usage = e.what();
    if (usage.empty()) usage = app.help();
    return {2, Json{{"error", "Usage"}, {"message", usage}}, {}};
  }

  for (const auto& [sub, verb] : leaves) {
    if (!sub->parsed()) continue;
    try {
      return verb->run(detail::Runner(opts, in));
    } catch (const Error& e) {
      return {2, json::error_json(e), {}};
    }
  }
  return {2, Json{{"error", "Usage"}, {"message", "no command given"}}, {}};
}

}  // namespace padicmp::cli
