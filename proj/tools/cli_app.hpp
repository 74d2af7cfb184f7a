#pragma once

#include "json_io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace haarframe::cli {

using io::json;

enum Exit : int { kFrame = 0, kNotFrame = 1, kUsage = 2, kNoWitness = 3, kInconsistent = 4 };

struct Globals {
  std::string out;
  std::string format;  // empty: per-verb default
  std::uint64_t max_iter = 0;
  unsigned workers = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational rational_arg(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(name + ": " + e.what());
  }
}

struct Range {
  Rational lo, hi;
};

inline Range range_arg(const std::string& name, const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError(name + ": expected lo:hi");
  Range r{rational_arg(name, text.substr(0, colon)), rational_arg(name, text.substr(colon + 1))};
  if (r.lo > r.hi) throw UsageError(name + ": lo exceeds hi");
  return r;
}

// Distinct values k/den inside [lo, hi], ascending, optionally skipping non-positive ones.
inline std::vector<Rational> grid_axis(const Range& r, long den) {
  if (den <= 0) throw UsageError("grid denominators must be positive");
  std::vector<Rational> out;
  Integer k = -floor_int(-r.lo * den);
  for (; Rational(k, den) <= r.hi; ++k) {
    Rational v(k, den);
    if (v > 0) out.push_back(v);
  }
  return out;
}

struct ParamText {
  std::string value;
  std::string lower = "0";
  std::string upper = "1";
  bool given() const { return !value.empty(); }
};

inline GaborParams gabor_arg(const ParamText& a, const std::string& c) {
  if (!a.given() || c.empty()) throw UsageError("need --a and --c");
  Rational cv = rational_arg("--c", c);
  try {
    if (a.value == "irrational")
      return GaborParams(IrrationalMarker{rational_arg("--a-lower", a.lower),
                                          rational_arg("--a-upper", a.upper)},
                         cv);
    return GaborParams(rational_arg("--a", a.value), cv);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

inline json with_schema(json body) {
  json j{{"schema_version", "1"}};
  if (body.is_object()) j.update(body);
  return j;
}

class Output {
 public:
  Output(const Globals& g, std::ostream& fallback) {
    if (!g.out.empty()) {
      file_.open(g.out);
      if (!file_) throw UsageError("cannot open output file " + g.out);
    }
    stream_ = g.out.empty() ? &fallback : &file_;
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

inline DecideOptions decide_options(const Globals& g) {
  DecideOptions opt;
  opt.max_iter = g.max_iter;
  return opt;
}

inline int verdict_code(const Decision& d) {
  return d.verdict == Verdict::Frame ? kFrame : kNotFrame;
}

// ---- decide ----------------------------------------------------------------

struct DecideArgs {
  ParamText a;
  std::string c;
  ParamText alpha;
  std::string beta;
  bool irrational_product = false;
};

inline int cmd_decide(const DecideArgs& args, const Globals& g, std::ostream& os) {
  const bool tf = args.alpha.given() || !args.beta.empty() || args.irrational_product;
  if (tf && (args.a.given() || !args.c.empty())) throw UsageError("use either --a/--c or --alpha/--beta");
  Decision d;
  json rec;
  std::string first, second, head;
  if (tf) {
    if (args.beta.empty()) throw UsageError("need --beta");
    Rational beta = rational_arg("--beta", args.beta);
    std::optional<TFParams> params;
    try {
      if (args.irrational_product || args.alpha.value == "irrational") {
        params.emplace(IrrationalMarker{rational_arg("--alpha-lower", args.alpha.lower),
                                        rational_arg("--alpha-upper", args.alpha.upper)},
                       beta);
      } else {
        if (!args.alpha.given()) throw UsageError("need --alpha");
        params.emplace(rational_arg("--alpha", args.alpha.value), beta);
      }
      d = decide_tf(*params, decide_options(g));
      GaborParams n = normalize_tf(*params);
      first = params->product_rational() ? to_string(std::get<Rational>(params->alpha)) : "irrational";
      second = to_string(beta);
      rec = with_schema({{"alpha", first}, {"beta", second}, {"a", a_string(n)}, {"c", to_string(n.c)}});
      head = "alpha,beta";
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  } else {
    GaborParams gp = gabor_arg(args.a, args.c);
    try {
      d = decide(gp, decide_options(g));
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
    first = a_string(gp);
    second = to_string(gp.c);
    rec = with_schema({{"a", first}, {"c", second}});
    head = "a,c";
  }
  if (g.format == "csv") {
    os << head << ",verdict,route,evidence\n"
       << first << "," << second << "," << to_string(d.verdict) << "," << to_string(d.route) << ","
       << io::evidence_text(d) << "\n";
  } else {
    rec.update(io::decision_json(d));
    os << rec.dump(2) << "\n";
  }
  return verdict_code(d);
}

// ---- invariant -------------------------------------------------------------

struct InvariantArgs {
  std::string alpha, x1, x2;
  ParamText a;
  std::string c;
};

inline int cmd_invariant(const InvariantArgs& args, const Globals& g, std::ostream& os) {
  MapParams p;
  json rec = with_schema(json::object());
  const bool direct = !args.alpha.empty() || !args.x1.empty() || !args.x2.empty();
  try {
    if (direct) {
      if (args.alpha.empty() || args.x1.empty() || args.x2.empty())
        throw UsageError("need all of --alpha, --x1, --x2");
      p = MapParams(rational_arg("--alpha", args.alpha), rational_arg("--x1", args.x1),
                    rational_arg("--x2", args.x2));
    } else {
      GaborParams gp = gabor_arg(args.a, args.c);
      p = map_params(gp);
      rec["a"] = a_string(gp);
      rec["c"] = to_string(gp.c);
    }
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  auto r = compute_S(p, g.max_iter);
  auto t = classify(p, r, g.max_iter);
  auto e = compute_E_closed(p, r);
  IntervalUnion fixed = r.S.empty() ? IntervalUnion{} : compute_E_fixedpoint(p, r, g.max_iter);
  if (fixed != e.E) throw InternalInconsistency("closed-form and fixed-point E differ");
  rec["params"] = io::params_json(p);
  rec["S"] = io::union_json(r.S);
  rec["N"] = r.steps_N;
  rec["type"] = io::structure_json(t);
  rec["y_alpha"] = r.S.empty() ? json(nullptr) : json(to_string(y_alpha(p, r.S)));
  rec["E"] = io::union_json(e.E);
  rec["case"] = to_string(e.kind);
  if (e.M > 0) rec["M"] = e.M;
  os << rec.dump(2) << "\n";
  return 0;
}

// ---- witness ---------------------------------------------------------------

inline int cmd_witness(const ParamText& a, const std::string& c, long window, const Globals& g,
                       std::ostream& os, std::ostream& err) {
  GaborParams gp = gabor_arg(a, c);
  if (!gp.a_rational()) throw UsageError("witness needs a rational --a");
  if (window < 0) throw UsageError("--window must be non-negative");
  Decision d;
  try {
    d = decide(gp, decide_options(g));
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  json rec = with_schema({{"a", a_string(gp)}, {"c", to_string(gp.c)}, {"verdict", to_string(d.verdict)}});
  if (d.verdict == Verdict::Frame) {
    rec["status"] = "frame: no witness";
    os << rec.dump(2) << "\n";
    return kNoWitness;
  }
  if (!d.symmetric || d.symmetric->E.empty()) {
    err << "not a frame by " << to_string(d.route) << "; no dynamical witness for this input\n";
    rec["status"] = "no dynamical witness";
    os << rec.dump(2) << "\n";
    return kNotFrame;
  }
  WitnessSequence w = build_witness(gp, *d.symmetric);
  WitnessCheck check = verify_witness(w, gp, window);
  rec["witness"] = io::witness_json(w);
  rec["window"] = window;
  if (check.verified) {
    rec["status"] = "verified";
  } else {
    rec["status"] = "failed";
    rec["failed_n"] = check.failed_n;
  }
  os << rec.dump(2) << "\n";
  return check.verified ? 0 : kNotFrame;
}

// ---- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string coords = "ac";
  std::string a_range, c_range, alpha_range, beta_range;
  long a_den = 0, c_den = 0, alpha_den = 0, beta_den = 0;
  bool include_outside = false;
};

struct SweepRow {
  std::string x, y, verdict, route, evidence;
  bool keep = true;
};

inline int cmd_sweep(const SweepArgs& args, const Globals& g, std::ostream& os) {
  const bool tf = args.coords == "tf";
  if (!tf && args.coords != "ac") throw UsageError("--coords must be ac or tf");
  std::vector<Rational> xs, ys;
  if (tf) {
    if (args.alpha_range.empty() || args.beta_range.empty())
      throw UsageError("tf sweeps need --alpha-range and --beta-range");
    xs = grid_axis(range_arg("--alpha-range", args.alpha_range), args.alpha_den);
    ys = grid_axis(range_arg("--beta-range", args.beta_range), args.beta_den);
  } else {
    if (args.a_range.empty() || args.c_range.empty())
      throw UsageError("ac sweeps need --a-range and --c-range");
    xs = grid_axis(range_arg("--a-range", args.a_range), args.a_den);
    ys = grid_axis(range_arg("--c-range", args.c_range), args.c_den);
  }
  if (xs.empty() || ys.empty()) throw UsageError("empty grid");

  const std::size_t total = xs.size() * ys.size();
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> inconsistent{false};
  const DecideOptions opt = decide_options(g);
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      const Rational& x = xs[i / ys.size()];
      const Rational& y = ys[i % ys.size()];
      SweepRow& row = rows[i];
      row.x = to_string(x);
      row.y = to_string(y);
      try {
        Decision d;
        if (tf) {
          d = decide_tf(TFParams(x, y), opt);
        } else {
          GaborParams gp(x, y);
          if (!args.include_outside && density_check(gp) == Region::OutsideRegion) {
            row.keep = false;
            continue;
          }
          d = decide(gp, opt);
        }
        row.verdict = to_string(d.verdict);
        row.route = to_string(d.route);
        row.evidence = io::evidence_text(d);
      } catch (const std::exception& e) {
        inconsistent = true;
        row.verdict = "error";
        row.route = "none";
        std::string msg = e.what();
        for (char& ch : msg)
          if (ch == ',' || ch == '\n') ch = ';';
        row.evidence = msg;
      }
    }
  };
  unsigned n_workers = std::max(1u, g.workers);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  const std::string hx = tf ? "alpha" : "a", hy = tf ? "beta" : "c";
  if (g.format == "json") {
    json list = json::array();
    for (const auto& r : rows)
      if (r.keep)
        list.push_back({{hx, r.x}, {hy, r.y}, {"verdict", r.verdict}, {"route", r.route},
                        {"evidence", r.evidence}});
    os << with_schema({{"coords", args.coords}, {"rows", list}}).dump(2) << "\n";
  } else {
    os << hx << "," << hy << ",verdict,route,evidence\n";
    for (const auto& r : rows)
      if (r.keep) os << r.x << "," << r.y << "," << r.verdict << "," << r.route << "," << r.evidence << "\n";
  }
  return inconsistent ? kInconsistent : 0;
}

// ---- oracle ----------------------------------------------------------------

inline int cmd_nullspace(const std::string& a_text, const std::string& u_text, const std::string& v_text,
                         long max_k, std::ostream& os) {
  Rational a = rational_arg("--a", a_text);
  LatticeWindow w{rational_arg("--u", u_text), rational_arg("--v", v_text)};
  std::optional<NullspaceWitness> s;
  try {
    s = nullspace_search(a, w, max_k);
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
  json rec = with_schema({{"a", to_string(a)}, {"u", to_string(w.u)}, {"v", to_string(w.v)},
                          {"max_period_multiple", max_k}});
  if (!s) {
    rec["found"] = false;
    rec["status"] = "no periodic witness found";
  } else {
    json vec = json::array(), basis = json::array();
    for (const auto& x : s->vector) vec.push_back(to_string(x));
    for (const auto& b : s->basis) {
      json row = json::array();
      for (const auto& x : b) row.push_back(to_string(x));
      basis.push_back(row);
    }
    rec["found"] = true;
    rec["x"] = to_string(s->x);
    rec["period"] = s->period;
    rec["vector"] = vec;
    rec["basis"] = basis;
    rec["reverified"] = verify_lattice_witness(a, w, *s, 2);
  }
  os << rec.dump(2) << "\n";
  return 0;
}

inline int cmd_gramian(const ParamText& a, const std::string& c, long truncation, long grid,
                       const Globals& g, std::ostream& os) {
  GaborParams gp = gabor_arg(a, c);
  if (!gp.a_rational()) throw UsageError("gramian needs a rational --a");
  if (truncation <= 0 || grid <= 0) throw UsageError("--truncation and --grid must be positive");
  GramianEstimate est = ronshen_estimate(gp, truncation, grid);
  std::ostringstream num;
  num << std::setprecision(12);
  auto fmt = [&](double v) {
    num.str("");
    num << v;
    return num.str();
  };
  if (g.format == "json") {
    json samples = json::array();
    for (std::size_t i = 0; i < est.x_samples.size(); ++i)
      samples.push_back({{"x", to_string(est.x_samples[i])}, {"sigma_min", fmt(est.sigma[i])}});
    os << with_schema({{"a", a_string(gp)}, {"c", to_string(gp.c)}, {"truncation", truncation},
                       {"samples", samples}, {"min_singular_estimate", fmt(est.min_singular_estimate)},
                       {"diagnostic", true}})
              .dump(2)
       << "\n";
  } else {
    os << "x,truncation,sigma_min\n";
    for (std::size_t i = 0; i < est.x_samples.size(); ++i)
      os << to_string(est.x_samples[i]) << "," << truncation << "," << fmt(est.sigma[i]) << "\n";
  }
  return 0;
}

// ---- entry -----------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact frame classification for Haar-window time-frequency shifts"};
  app.name("haarframe");
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--max-iter", g.max_iter, "Iteration cap for the dynamics (0: 4 L^2)");
  app.add_option("--workers", g.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  auto add_a = [](CLI::App* sub, ParamText& a, bool required_bounds = true) {
    sub->add_option("--a", a.value, "Shift a as p/q, or 'irrational'");
    if (required_bounds) {
      sub->add_option("--a-lower", a.lower, "Asserted lower bound for an irrational a");
      sub->add_option("--a-upper", a.upper, "Asserted upper bound for an irrational a");
    }
  };

  DecideArgs dargs;
  auto* decide_cmd = app.add_subcommand("decide", "Decide the frame property (exit 0 frame, 1 not frame)");
  decide_cmd->fallthrough();
  add_a(decide_cmd, dargs.a);
  decide_cmd->add_option("--c", dargs.c, "Window half-width c as p/q");
  decide_cmd->add_option("--alpha", dargs.alpha.value, "Time shift alpha as p/q, or 'irrational'");
  decide_cmd->add_option("--alpha-lower", dargs.alpha.lower, "Asserted lower bound for an irrational alpha");
  decide_cmd->add_option("--alpha-upper", dargs.alpha.upper, "Asserted upper bound for an irrational alpha");
  decide_cmd->add_option("--beta", dargs.beta, "Modulation beta as p/q");
  decide_cmd->add_flag("--irrational-product", dargs.irrational_product,
                       "Declare alpha*beta irrational (alpha given by its bounds)");

  InvariantArgs iargs;
  auto* inv_cmd = app.add_subcommand("invariant", "Dump S, its type, Y(alpha) and E as JSON");
  inv_cmd->fallthrough();
  inv_cmd->add_option("--alpha", iargs.alpha, "Rotation alpha");
  inv_cmd->add_option("--x1", iargs.x1, "Hole start x1");
  inv_cmd->add_option("--x2", iargs.x2, "Hole end x2");
  add_a(inv_cmd, iargs.a, false);
  inv_cmd->add_option("--c", iargs.c, "Window half-width c (with --a)");

  ParamText wa;
  std::string wc;
  long window = 500;
  auto* wit_cmd = app.add_subcommand("witness", "Build and verify a non-frame witness (exit 3 on frame)");
  wit_cmd->fallthrough();
  add_a(wit_cmd, wa, false);
  wit_cmd->add_option("--c", wc, "Window half-width c");
  wit_cmd->add_option("--window", window, "Verify all |n| <= window");

  SweepArgs sargs;
  auto* sweep_cmd = app.add_subcommand("sweep", "Decide every point of a rational grid");
  sweep_cmd->fallthrough();
  sweep_cmd->add_option("--coords", sargs.coords, "ac or tf")->check(CLI::IsMember({"ac", "tf"}));
  sweep_cmd->add_option("--a-range", sargs.a_range, "lo:hi for a");
  sweep_cmd->add_option("--a-den", sargs.a_den, "grid denominator for a");
  sweep_cmd->add_option("--c-range", sargs.c_range, "lo:hi for c");
  sweep_cmd->add_option("--c-den", sargs.c_den, "grid denominator for c");
  sweep_cmd->add_option("--alpha-range", sargs.alpha_range, "lo:hi for alpha");
  sweep_cmd->add_option("--alpha-den", sargs.alpha_den, "grid denominator for alpha");
  sweep_cmd->add_option("--beta-range", sargs.beta_range, "lo:hi for beta");
  sweep_cmd->add_option("--beta-den", sargs.beta_den, "grid denominator for beta");
  sweep_cmd->add_flag("--include-outside", sargs.include_outside,
                      "Also emit ac points outside the density region");

  auto* oracle_cmd = app.add_subcommand("oracle", "Lattice nullspace search or Gramian estimate");
  oracle_cmd->fallthrough();
  oracle_cmd->require_subcommand(1);
  std::string na, nu, nv;
  long max_k = 8;
  auto* ns_cmd = oracle_cmd->add_subcommand("nullspace", "Periodic null sequences for H_{u,v}");
  ns_cmd->fallthrough();
  ns_cmd->add_option("--a", na, "Shift a = p/q")->required();
  ns_cmd->add_option("--u", nu, "Left width u (multiple of 1/q)")->required();
  ns_cmd->add_option("--v", nv, "Right width v (multiple of 1/q)")->required();
  ns_cmd->add_option("--max-k", max_k, "Largest period multiple k (period p k)");
  ParamText ga;
  std::string gc;
  long truncation = 64, grid = 16;
  auto* gr_cmd = oracle_cmd->add_subcommand("gramian", "Smallest singular value of truncated systems (diagnostic)");
  gr_cmd->fallthrough();
  add_a(gr_cmd, ga, false);
  gr_cmd->add_option("--c", gc, "Window half-width c");
  gr_cmd->add_option("--truncation", truncation, "Coefficients j in [-T, T]");
  gr_cmd->add_option("--grid", grid, "Number of x samples in [0, a)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kUsage;
  }

  try {
    Output sink(g, out);
    std::ostream& os = sink.get();
    if (*decide_cmd) return cmd_decide(dargs, g, os);
    if (*inv_cmd) return cmd_invariant(iargs, g, os);
    if (*wit_cmd) return cmd_witness(wa, wc, window, g, os, err);
    if (*sweep_cmd) return cmd_sweep(sargs, g, os);
    if (*ns_cmd) return cmd_nullspace(na, nu, nv, max_k, os);
    if (*gr_cmd) return cmd_gramian(ga, gc, truncation, grid, g, os);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kInconsistent;
  } catch (const IterationCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace haarframe::cli
