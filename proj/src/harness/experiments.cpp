#include "fluxstab/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "fluxstab/errors.hpp"
#include "fluxstab/euler.hpp"
#include "fluxstab/flux_metrics.hpp"
#include "fluxstab/front_tracking.hpp"
#include "fluxstab/harness/descriptors.hpp"
#include "fluxstab/lax_oleinik.hpp"
#include "fluxstab/linear_hd.hpp"
#include "fluxstab/riemann.hpp"

namespace fluxstab::harness {

namespace {

using Runner = std::function<ExperimentResult(const Config&, const RunContext&)>;

// Results land in input order regardless of which worker finishes first.
template <typename T>
std::vector<T> parallel_map(std::size_t count, unsigned jobs, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Interval state_interval(const Config& c) {
  const auto k = c.get_list_or("K", {-1.0, 1.0});
  if (k.size() != 2 || !(k[0] < k[1])) throw ConfigError("K: expected lo,hi with lo < hi");
  return {k[0], k[1]};
}

std::size_t node_count(const Config& c) {
  const long n = c.get_int_or("nodes", 512);
  if (n < 2) throw ConfigError("nodes: need at least 2");
  return static_cast<std::size_t>(n);
}

double positive(const Config& c, const std::string& key, double fallback) {
  const double v = c.get_double_or(key, fallback);
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v + 0.0;
  return os.str();
}

Check flag_check(const std::string& name, const std::vector<double>& flags, std::string detail = "") {
  bool ok = !flags.empty();
  for (double f : flags) ok = ok && f == 1.0;
  return {name, ok, std::move(detail)};
}

std::vector<double> samples_between(double a, double b, long n) {
  std::vector<double> xs;
  for (long i = 0; i < n; ++i) xs.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return xs;
}

AnyFlux maybe_pl(const Config& c, AnyFlux f) {
  if (c.get_or("approx", "exact") == "pl") {
    if (const auto* s = std::get_if<ScalarFlux>(&f)) {
      return PiecewiseLinearFlux::interpolate(*s, node_count(c));
    }
  }
  return f;
}

ExperimentResult riemann_exp(const Config& c, const RunContext&) {
  const Interval k = state_interval(c);
  const AnyFlux f = maybe_pl(c, parse_flux(c.get("f"), k));
  const double ul = c.get_double("uL");
  const double ur = c.get_double("uR");
  const double t = positive(c, "t", 1.0);
  const double reach = lambda_hat_of(f) * t + 0.5;
  const double lo = c.get_double_or("x_lo", -reach);
  const double hi = c.get_double_or("x_hi", reach);
  const long n = c.get_int_or("samples", 201);
  RiemannFan fan;
  try {
    fan = solve_riemann(f, ul, ur);
  } catch (const OutOfDomain& e) {
    throw ConfigError(std::string("riemann: ") + e.what());
  }
  ExperimentResult r;
  r.table.columns = {"t", "x", "u"};
  for (double x : samples_between(lo, hi, n)) r.table.add({t, x, eval_fan(fan, t, x)});
  r.plot = PlotSpec{"Riemann solution", "x", {"u"}, false};
  for (const auto& w : fan.waves) {
    if (const auto* s = std::get_if<Shock>(&w)) {
      r.summary.push_back("jump " + fmt(s->left) + " -> " + fmt(s->right) + " speed " + fmt(s->speed));
    } else {
      const auto& rw = std::get<Rarefaction>(w);
      r.summary.push_back("rarefaction " + fmt(rw.left) + " -> " + fmt(rw.right) + " speeds [" +
                          fmt(rw.speed_lo) + ", " + fmt(rw.speed_hi) + "]");
    }
  }
  if (fan.waves.empty()) r.summary.push_back("no waves (uL = uR)");
  const FanCheck fc = check_fan(f, fan, 1e-9);
  r.checks.push_back({"fan admissible", fc.ok, fc.message});
  return r;
}

ExperimentResult evolve_exp(const Config& c, const RunContext&) {
  const Interval k = state_interval(c);
  const std::string engine = c.get_or("engine", "front-tracking");
  const double T = positive(c, "T", 1.0);
  const long n = c.get_int_or("samples", 401);
  ExperimentResult r;
  r.table.columns = {"t", "x", "u"};
  r.plot = PlotSpec{"solution at t = " + fmt(T), "x", {"u"}, false};
  if (engine == "front-tracking") {
    const PiecewiseLinearFlux f = parse_pl_flux(c.get("f"), k, node_count(c));
    const PiecewiseConstant u0 = parse_step_datum(c.get("datum"));
    const PiecewiseConstant start = project_to_nodes(f, u0);
    const FrontTrackingState s = ft_evolve(f, u0, T);
    const Interval w = influence_window(u0, f.lambda_hat(), T);
    const double lo = c.get_double_or("x_lo", w.lo);
    const double hi = c.get_double_or("x_hi", w.hi);
    for (double x : samples_between(lo, hi, n)) r.table.add({T, x, s.profile.scalar_at(x)});
    const double tv0 = start.total_variation();
    const double tv1 = s.profile.total_variation();
    const double m0 = start.integral(w)[0];
    const double m1 = s.profile.integral(w)[0];
    r.summary.push_back("fronts " + std::to_string(s.fronts.size()) + ", interactions " +
                        std::to_string(s.interactions));
    r.summary.push_back("TV " + fmt(tv0) + " -> " + fmt(tv1) + ", mass " + fmt(m0) + " -> " + fmt(m1));
    r.checks.push_back({"total variation nonincreasing", tv1 <= tv0 + 1e-12, ""});
    r.checks.push_back({"mass conserved", std::abs(m1 - m0) <= 1e-10 * (1.0 + std::abs(m0)), ""});
  } else if (engine == "lax-oleinik") {
    const LaxOleinikProblem p{parse_smooth_flux(c.get("f"), k), parse_datum(c.get("datum"))};
    if (!p.flux.is_convex()) throw ConfigError("lax-oleinik engine needs a uniformly convex flux");
    double lo = 0.0, hi = 1.0;
    if (const auto& st = p.data.as_steps(); st && !st->breakpoints().empty()) {
      lo = st->breakpoints().front() - p.flux.lambda_hat() * T - 1.0;
      hi = st->breakpoints().back() + p.flux.lambda_hat() * T + 1.0;
    }
    lo = c.get_double_or("x_lo", lo);
    hi = c.get_double_or("x_hi", hi);
    for (double x : samples_between(lo, hi, n)) r.table.add({T, x, lax_oleinik_eval(p, T, x)});
  } else {
    throw ConfigError("engine: expected front-tracking or lax-oleinik");
  }
  return r;
}

RiemannSampler sampler_from(const Config& c) {
  RiemannSampler s;
  s.grid = static_cast<int>(c.get_int_or("grid", 64));
  s.near_diagonal = static_cast<int>(c.get_int_or("near", 64));
  s.gap = c.get_double_or("gap", 1e-3);
  if (s.grid < 0 || s.near_diagonal < 0 || !(s.gap > 0.0)) throw ConfigError("bad sampler settings");
  return s;
}

ExperimentResult hatd_exp(const Config& c, const RunContext&) {
  const Interval k = state_interval(c);
  const AnyFlux f = maybe_pl(c, parse_flux(c.get("f"), k));
  const AnyFlux g = maybe_pl(c, parse_flux(c.get("g"), k));
  FluxDistanceReport rep;
  try {
    rep = hat_d_estimate(f, g, sampler_from(c));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("hatd: ") + e.what());
  }
  ExperimentResult r;
  r.table.columns = {"estimate", "argmax_left", "argmax_right", "samples", "lower_bound"};
  r.table.add({rep.estimate, rep.argmax_left, rep.argmax_right, static_cast<double>(rep.samples),
               rep.lower_bound ? 1.0 : 0.0});
  r.summary.push_back("hat_d >= " + fmt(rep.estimate) + " (sampled lower bound), attained at " +
                      fmt(rep.argmax_left) + " | " + fmt(rep.argmax_right));
  r.summary.push_back("max |f' - g'| sampled: " + fmt(derivative_gap(f, g)));
  return r;
}

ExperimentResult hatd_lin_exp(const Config& c, const RunContext&) {
  const Matrix a = parse_matrix(c.get("A"));
  const Matrix b = parse_matrix(c.get("B"));
  if (a.size() != b.size()) throw ConfigError("A and B must have the same size");
  HatDLinOptions opt;
  opt.sphere_samples = static_cast<std::size_t>(c.get_int_or("samples", 4096));
  HatDLinReport rep;
  try {
    rep = hat_d_lin(a, b, opt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double op = operator_norm(b - a);
  ExperimentResult r;
  r.table.columns = {"value", "op_norm", "holds"};
  std::vector<double> row{rep.value, op, rep.value >= op - 1e-6 ? 1.0 : 0.0};
  for (std::size_t i = 0; i < rep.argmax.size(); ++i) {
    r.table.columns.push_back("argmax_" + std::to_string(i));
    row.push_back(rep.argmax[i]);
  }
  r.table.add(row);
  std::string dir;
  for (std::size_t i = 0; i < rep.argmax.size(); ++i) dir += (i ? ", " : "") + fmt(rep.argmax[i]);
  r.summary.push_back("hat_d_lin = " + fmt(rep.value) + "  (argmax direction (" + dir + "))");
  r.summary.push_back("||B-A|| = " + fmt(op));
  r.checks.push_back({"hat_d_lin >= ||B-A||", row[2] == 1.0, ""});
  return r;
}

ExperimentResult tmain_exp(const Config& c, const RunContext& ctx) {
  const Interval k = state_interval(c);
  const std::size_t nodes = node_count(c);
  const PiecewiseLinearFlux f = parse_pl_flux(c.get("f"), k, nodes);
  const PiecewiseLinearFlux g = parse_pl_flux(c.get("g"), k, nodes);
  const PiecewiseConstant u0 = parse_step_datum(c.get("datum"));
  const auto times = c.get_list_or("T", {0.25, 0.5, 1.0});
  const double lf = c.get_double_or("L_f", 1.0);
  if (lf < 1.0) throw ConfigError("L_f: must be >= 1");
  const double hd = hat_d_estimate(f, g, sampler_from(c)).estimate;
  const auto entries = parallel_map<TmainEntry>(times.size(), ctx.jobs, [&](std::size_t i) {
    return check_tmain(f, g, u0, times[i], lf, hd);
  });
  ExperimentResult r;
  r.table.columns = {"T", "lhs", "hat_d", "tv_integral", "rhs", "holds"};
  for (const auto& e : entries) {
    r.table.add({e.T, e.lhs, e.hat_d, e.tv_integral, e.rhs, e.holds ? 1.0 : 0.0});
  }
  r.plot = PlotSpec{"semigroup gap and bound", "T", {"lhs", "rhs"}, false};
  r.checks.push_back(flag_check("gap <= L hat_d int TV", r.table.column("holds")));
  return r;
}

ExperimentResult pgeneral_exp(const Config& c, const RunContext&) {
  const Interval k = state_interval(c);
  const ScalarFlux f = parse_smooth_flux(c.get("f"), k);
  const ScalarFlux g = parse_smooth_flux(c.get("g"), k);
  const auto us = uniform_samples(k, static_cast<int>(c.get_int_or("samples", 4096)));
  const double ratio = c.get_double_or("ratio", 0.95);
  PgeneralCheck pc;
  try {
    pc = check_pgeneral(f, g, us, sampler_from(c), ratio);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("pgeneral: ") + e.what());
  }
  ExperimentResult r;
  r.table.columns = {"lhs", "rhs", "ratio", "holds"};
  r.table.add({pc.lhs, pc.rhs, pc.rhs > 0.0 ? pc.lhs / pc.rhs : 1.0, pc.holds ? 1.0 : 0.0});
  r.checks.push_back({"hat_d >= " + fmt(ratio) + " max|f'-g'|", pc.holds, ""});
  return r;
}

void require_convex_flux(const ScalarFlux& f) {
  if (!f.is_convex()) throw ConfigError("flux '" + f.name() + "' is not uniformly convex");
}

ExperimentResult linfty_exp(const Config& c, const RunContext&) {
  const Interval k = state_interval(c);
  const ScalarFlux f = parse_smooth_flux(c.get("f"), k);
  const ScalarFlux g = parse_smooth_flux(c.get("g"), k);
  require_convex_flux(f);
  require_convex_flux(g);
  const InitialData u0 = parse_datum(c.get("datum"));
  const double t = positive(c, "t", 0.25);
  const double a = c.get_double_or("a", 0.0);
  const double b = c.get_double_or("b", 1.0);
  if (!(a < b)) throw ConfigError("need a < b");
  const auto res = linfty_bound_check(f, g, u0, t, a, b);
  ExperimentResult r;
  r.table.columns = {"t", "a", "b", "lhs", "rhs", "max_deriv_gap", "holds"};
  r.table.add({t, a, b, res.lhs, res.rhs, res.max_deriv_gap, res.holds ? 1.0 : 0.0});
  r.checks.push_back({"L1 gap <= L-infinity bound", res.holds, ""});
  return r;
}

ExperimentResult oleinik_tv_exp(const Config& c, const RunContext& ctx) {
  const Interval k = state_interval(c);
  const ScalarFlux f = parse_smooth_flux(c.get("f"), k);
  require_convex_flux(f);
  const LaxOleinikProblem p{f, parse_datum(c.get("datum"))};
  const double t = positive(c, "t", 0.125);
  const double a = c.get_double_or("a", 0.0);
  const double b = c.get_double_or("b", 1.0);
  if (!(a < b)) throw ConfigError("need a < b");
  const long pairs = c.get_int_or("pairs", 10000);
  const auto tv = oleinik_tv_bound_check(p, t, a, b, static_cast<int>(c.get_int_or("grid", 4096)));
  const double lam = f.lambda_hat();
  const auto os = oleinik_one_sided_check(p, t, {a - 2 * lam * t, b + 2 * lam * t},
                                          static_cast<std::size_t>(std::max(0L, pairs)), ctx.seed);
  ExperimentResult r;
  r.table.columns = {"t", "a", "b", "tv", "bound", "tv_holds", "worst_excess", "one_sided_holds"};
  r.table.add({t, a, b, tv.tv, tv.bound, tv.holds ? 1.0 : 0.0, os.worst_excess,
               os.holds ? 1.0 : 0.0});
  r.checks.push_back({"TV <= Oleinik bound", tv.holds, fmt(tv.tv) + " <= " + fmt(tv.bound)});
  r.checks.push_back({"one-sided Lipschitz", os.holds, "worst excess " + fmt(os.worst_excess)});
  return r;
}

ExperimentResult rexp_exp(const Config& c, const RunContext& ctx) {
  const auto ns = c.get_list_or("n", {1, 2, 3, 4, 5, 6});
  const bool same = c.get_bool_or("same_flux", false);
  const long panels = c.get_int_or("panels", 1L << 14);
  const double tol = c.get_double_or("tol", 1e-3);
  for (double n : ns) {
    if (n < 1 || n > 30 || n != std::floor(n)) throw ConfigError("n: integers in [1, 30]");
  }
  if (panels < (1L << 14)) throw ConfigError("panels: at least 16384");
  const auto res = parallel_map<RexpResult>(ns.size(), ctx.jobs, [&](std::size_t i) {
    return rexp_counterexample(static_cast<int>(ns[i]), same, panels);
  });
  ExperimentResult r;
  r.table.columns = {"n", "t", "l1_distance", "panels"};
  const double expected = same ? 0.0 : 1.0;
  bool ok = true;
  for (const auto& x : res) {
    r.table.add({static_cast<double>(x.n), x.t, x.l1_distance, static_cast<double>(x.panels)});
    ok = ok && std::abs(x.l1_distance - expected) <= tol;
  }
  r.plot = PlotSpec{"int_0^1 |v - u| dx at t = 2^-n", "n", {"l1_distance"}, false};
  r.checks.push_back({"l1_distance = " + fmt(expected) + " +- " + fmt(tol), ok, ""});
  return r;
}

ExperimentResult classical_limit_exp(const Config& c, const RunContext&) {
  const auto cs = c.get_list_or("c", {8, 16, 32, 64});
  const double sigma = positive(c, "sigma", 1.0);
  const auto left = c.get_list_or("left", {2.0, 0.0});
  const auto right = c.get_list_or("right", {1.0, 0.0});
  const double T = positive(c, "T", 0.2);
  const long cells = c.get_int_or("N", 2000);
  ClassicalLimitSetup setup;
  setup.x_lo = c.get_double_or("x_lo", -1.5);
  setup.x_hi = c.get_double_or("x_hi", 1.5);
  setup.cfl = c.get_double_or("cfl", 0.45);
  setup.rho_min = c.get_double_or("rho_min", 0.1);
  const auto box = c.get_list_or("box", {0.5, 4.0, -2.0, 2.0});
  const auto range = c.get_list_or("slope_range", {-2.3, -1.7});
  if (left.size() != 2 || right.size() != 2) throw ConfigError("left/right: expected rho,q");
  if (box.size() != 4) throw ConfigError("box: expected rho_lo,rho_hi,q_lo,q_hi");
  if (range.size() != 2) throw ConfigError("slope_range: expected lo,hi");
  if (cells < 2) throw ConfigError("N: need at least 2 cells");
  setup.box = {box[0], box[1], box[2], box[3]};
  ClassicalLimitResult res;
  try {
    res = classical_limit_experiment(cs, {left[0], left[1]}, {right[0], right[1]}, T,
                                     static_cast<std::size_t>(cells), sigma, setup);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("classical-limit: ") + e.what());
  }
  ExperimentResult r;
  r.table.columns = {"c", "l1_gap", "mass_residual", "momentum_residual"};
  for (const auto& row : res.rows) {
    r.table.add({row.c, row.l1_gap, row.mass_residual, row.momentum_residual});
  }
  r.plot = PlotSpec{"L1 gap vs c (slope " + fmt(res.slope) + ")", "c", {"l1_gap"}, true};
  r.summary.push_back("log-log slope = " + fmt(res.slope) + "  (wave-speed bound " +
                      fmt(res.speed_bound) + ")");
  r.checks.push_back({"slope in [" + fmt(range[0]) + ", " + fmt(range[1]) + "]",
                      res.slope >= range[0] && res.slope <= range[1], fmt(res.slope)});
  return r;
}

ExperimentResult lerrest_exp(const Config& c, const RunContext&) {
  const Interval k = state_interval(c);
  const std::size_t nodes = node_count(c);
  const PiecewiseLinearFlux f = parse_pl_flux(c.get("f"), k, nodes);
  const PiecewiseLinearFlux g = parse_pl_flux(c.get("g"), k, nodes);
  const PiecewiseConstant u0 = parse_step_datum(c.get("datum"));
  const double T = positive(c, "T", 1.0);
  const long steps = c.get_int_or("steps", 256);
  if (steps < 1) throw ConfigError("steps: must be positive");
  const auto res = lerrest_diagnostic(f, g, u0, T, static_cast<std::size_t>(steps));
  ExperimentResult r;
  r.table.columns = {"T", "steps", "lhs", "rhs", "holds"};
  r.table.add({T, static_cast<double>(steps), res.lhs, res.rhs, res.holds ? 1.0 : 0.0});
  r.checks.push_back({"error functional within 10% of Riemann sum", res.holds, ""});
  return r;
}

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r{
      {"riemann", riemann_exp},         {"evolve", evolve_exp},
      {"hatd", hatd_exp},               {"hatd-lin", hatd_lin_exp},
      {"tmain", tmain_exp},             {"pgeneral", pgeneral_exp},
      {"linfty", linfty_exp},           {"oleinik-tv", oleinik_tv_exp},
      {"rexp", rexp_exp},               {"classical-limit", classical_limit_exp},
      {"lerrest", lerrest_exp},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds{"riemann", "evolve",  "hatd",       "hatd-lin",
                                              "tmain",   "pgeneral", "linfty",    "oleinik-tv",
                                              "rexp",    "classical-limit", "lerrest"};
  return kinds;
}

ExperimentResult run_experiment(const std::string& kind, const Config& cfg, const RunContext& ctx) {
  const auto it = registry().find(kind);
  if (it == registry().end()) throw ConfigError("unknown experiment '" + kind + "'");
  ExperimentResult r;
  try {
    r = it->second(cfg, ctx);
  } catch (const OutOfDomain& e) {
    throw ConfigError(std::string("state outside the flux domain: ") + e.what());
  }
  for (const auto& [key, value] : cfg.entries()) {
    if (key.rfind("expect.", 0) != 0) continue;
    const std::string col = key.substr(7);
    const auto range = parse_number_list(cfg.get(key), key);
    if (range.size() != 2) throw ConfigError(key + ": expected lo,hi");
    if (!r.table.has_column(col)) throw ConfigError(key + ": no column '" + col + "'");
    bool ok = !r.table.rows.empty();
    for (double v : r.table.column(col)) ok = ok && v >= range[0] && v <= range[1];
    r.checks.push_back({col + " in [" + fmt(range[0]) + ", " + fmt(range[1]) + "]", ok, ""});
  }
  if (const auto unused = cfg.unused_keys(); !unused.empty()) {
    std::string list;
    for (const auto& k : unused) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError("unknown keys for '" + kind + "': " + list);
  }
  return r;
}

int run(const std::string& kind, Config cfg, const RunOptions& opt, std::ostream& log) {
  ExperimentResult res;
  try {
    res = run_experiment(kind, cfg, opt.ctx);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalAbort& e) {
    log << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  auto resolved = cfg.resolved();
  resolved["experiment"] = kind;
  resolved["seed"] = std::to_string(opt.ctx.seed);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  const fs::path base = fs::path(opt.out_dir) / kind;
  {
    std::ofstream csv(base.string() + ".csv");
    if (!csv) {
      log << "cannot write " << base.string() << ".csv\n";
      return kConfigError;
    }
    write_csv(csv, resolved, res.table);
  }
  if (opt.write_svg && res.plot) {
    std::ofstream svg(base.string() + ".svg");
    write_svg(svg, res.table, *res.plot);
  }

  for (const auto& line : res.summary) log << line << '\n';
  if (res.summary.empty() && res.table.rows.size() <= 8) {
    for (const auto& row : res.table.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        log << (j ? "  " : "") << res.table.columns[j] << "=" << fmt(row[j]);
      }
      log << '\n';
    }
  }
  bool all = true;
  for (const auto& ch : res.checks) {
    log << (ch.pass ? "PASS " : "FAIL ") << ch.name;
    if (!ch.detail.empty()) log << "  (" << ch.detail << ")";
    log << '\n';
    all = all && ch.pass;
  }
  log << "wrote " << base.string() << ".csv\n";
  if (opt.write_svg && res.plot) log << "wrote " << base.string() << ".svg\n";
  return all ? kOk : kAcceptanceFailure;
}

}  // namespace fluxstab::harness
