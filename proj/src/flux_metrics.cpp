#include "fluxstab/flux_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fluxstab {

namespace {

double deriv_of(const AnyFlux& flux, double u) {
  if (const auto* s = std::get_if<ScalarFlux>(&flux)) return s->deriv(u);
  const auto& pl = std::get<PiecewiseLinearFlux>(flux);
  const std::size_t up = pl.upper_node(u);
  const std::size_t seg = std::min(up == 0 ? 0 : up - 1, pl.nodes().size() - 2);
  return pl.slope(seg);
}

Interval shared_domain(const AnyFlux& f, const AnyFlux& g) {
  const Interval a = domain_of(f);
  const Interval b = domain_of(g);
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("read_report_csv: bad number '" + s + "'");
  return v;
}

const char* kHeader =
    "record,flux_f,flux_g,hat_d,sup_hatd_lin,c0_gap,lipschitz,pgeneral_holds,tmain_holds,"
    "datum,T,lhs,entry_hat_d,tv_integral,entry_lipschitz,rhs,holds";

}  // namespace

std::vector<double> uniform_samples(Interval k, int count) {
  std::vector<double> out;
  const int n = std::max(2, count);
  for (int i = 0; i < n; ++i) out.push_back(i + 1 == n ? k.hi : k.lo + k.length() * i / (n - 1));
  return out;
}

double derivative_gap(const AnyFlux& f, const AnyFlux& g, int samples) {
  const Interval k = shared_domain(f, g);
  double best = 0.0;
  for (double u : uniform_samples(k, samples)) {
    best = std::max(best, std::abs(deriv_of(f, u) - deriv_of(g, u)));
  }
  return best;
}

PgeneralCheck check_pgeneral(const ScalarFlux& f, const ScalarFlux& g,
                             const std::vector<double>& u_samples, const RiemannSampler& sampler,
                             double ratio) {
  PgeneralCheck out;
  out.lhs = hat_d_estimate(f, g, sampler).estimate;
  for (double u : u_samples) out.rhs = std::max(out.rhs, std::abs(f.deriv(u) - g.deriv(u)));
  out.holds = out.lhs >= ratio * out.rhs;
  return out;
}

TmainEntry check_tmain(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                       const PiecewiseConstant& u0, double T, double lipschitz,
                       std::optional<double> hat_d, double tol) {
  if (!(lipschitz >= 1.0)) throw std::invalid_argument("check_tmain: Lipschitz constant must be >= 1");
  TmainEntry e;
  e.T = T;
  e.lipschitz = lipschitz;
  const FrontTrackingState sf = ft_evolve(f, u0, T);
  const FrontTrackingState sg = ft_evolve(g, u0, T);
  const Interval w = influence_window(u0, std::max(f.lambda_hat(), g.lambda_hat()), T);
  e.lhs = l1_distance(sf.profile, sg.profile, w);
  e.tv_integral = sg.tv_integral;
  e.hat_d = hat_d ? *hat_d : hat_d_estimate(f, g).estimate;
  e.rhs = lipschitz * e.hat_d * e.tv_integral;
  e.holds = e.lhs <= e.rhs + tol;
  return e;
}

LerrestResult lerrest_diagnostic(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                                 const PiecewiseConstant& u0, double T, std::size_t steps,
                                 double lipschitz, double slack) {
  if (steps == 0 || !(T > 0.0)) throw std::invalid_argument("lerrest_diagnostic: bad T or steps");
  const double h = T / static_cast<double>(steps);
  const Interval w = influence_window(u0, std::max(f.lambda_hat(), g.lambda_hat()), T);

  FrontTracker traj(g, u0);
  std::vector<PiecewiseConstant> snaps{traj.profile()};
  for (std::size_t k = 1; k <= steps; ++k) {
    traj.advance_to(T * static_cast<double>(k) / static_cast<double>(steps));
    snaps.push_back(traj.profile());
  }

  LerrestResult out;
  out.steps = steps;
  out.lhs = l1_distance(snaps.back(), ft_evolve(f, snaps.front(), T).profile, w);
  double sum = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    sum += l1_distance(ft_evolve(f, snaps[k], h).profile, snaps[k + 1], w);
  }
  out.rhs = lipschitz * sum;
  out.holds = out.lhs <= (1.0 + slack) * out.rhs + 1e-12;
  return out;
}

StabilityReport build_stability_report(const PiecewiseLinearFlux& f, const PiecewiseLinearFlux& g,
                                       const std::vector<NamedDatum>& data,
                                       const std::vector<double>& times,
                                       const RiemannSampler& sampler) {
  StabilityReport r;
  r.flux_f = f.name();
  r.flux_g = g.name();
  r.lipschitz = 1.0;
  r.hat_d_estimate = hat_d_estimate(f, g, sampler).estimate;
  // For scalar fluxes the linear metric of the derivatives is |f' - g'|.
  r.sup_hatd_lin_on_derivatives = derivative_gap(f, g);
  r.c0_derivative_gap = r.sup_hatd_lin_on_derivatives;
  r.pgeneral_holds = r.hat_d_estimate >= 0.95 * r.sup_hatd_lin_on_derivatives;
  r.tmain_holds = true;
  for (const auto& d : data) {
    for (double T : times) {
      TmainEntry e = check_tmain(f, g, d.u0, T, r.lipschitz, r.hat_d_estimate);
      e.datum = d.id;
      r.tmain_holds = r.tmain_holds && e.holds;
      r.semigroup_gaps.push_back(std::move(e));
    }
  }
  return r;
}

void write_report_csv(std::ostream& os, const StabilityReport& r) {
  os << kHeader << '\n';
  os << "report," << quote(r.flux_f) << ',' << quote(r.flux_g) << ',' << fmt(r.hat_d_estimate)
     << ',' << fmt(r.sup_hatd_lin_on_derivatives) << ',' << fmt(r.c0_derivative_gap) << ','
     << fmt(r.lipschitz) << ',' << (r.pgeneral_holds ? 1 : 0) << ',' << (r.tmain_holds ? 1 : 0)
     << ",,,,,,,,\n";
  for (const auto& e : r.semigroup_gaps) {
    os << "gap,,,,,,,,," << quote(e.datum) << ',' << fmt(e.T) << ',' << fmt(e.lhs) << ','
       << fmt(e.hat_d) << ',' << fmt(e.tv_integral) << ',' << fmt(e.lipschitz) << ','
       << fmt(e.rhs) << ',' << (e.holds ? 1 : 0) << '\n';
  }
}

StabilityReport read_report_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kHeader) {
    throw std::invalid_argument("read_report_csv: missing header");
  }
  StabilityReport r;
  bool have_report = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 17) throw std::invalid_argument("read_report_csv: expected 17 columns");
    if (c[0] == "report") {
      r.flux_f = c[1];
      r.flux_g = c[2];
      r.hat_d_estimate = parse_num(c[3]);
      r.sup_hatd_lin_on_derivatives = parse_num(c[4]);
      r.c0_derivative_gap = parse_num(c[5]);
      r.lipschitz = parse_num(c[6]);
      r.pgeneral_holds = c[7] == "1";
      r.tmain_holds = c[8] == "1";
      have_report = true;
    } else if (c[0] == "gap") {
      TmainEntry e;
      e.datum = c[9];
      e.T = parse_num(c[10]);
      e.lhs = parse_num(c[11]);
      e.hat_d = parse_num(c[12]);
      e.tv_integral = parse_num(c[13]);
      e.lipschitz = parse_num(c[14]);
      e.rhs = parse_num(c[15]);
      e.holds = c[16] == "1";
      r.semigroup_gaps.push_back(std::move(e));
    } else {
      throw std::invalid_argument("read_report_csv: unknown record '" + c[0] + "'");
    }
  }
  if (!have_report) throw std::invalid_argument("read_report_csv: no report row");
  return r;
}

std::string summarize(const StabilityReport& r) {
  std::ostringstream os;
  os.precision(6);
  os << "flux pair      : " << r.flux_f << " vs " << r.flux_g << '\n'
     << "hat d (lower)  : " << r.hat_d_estimate << '\n'
     << "|f' - g'|_C0   : " << r.c0_derivative_gap << '\n'
     << "L_f (spatial)  : " << r.lipschitz << '\n'
     << "derivative gap check " << (r.pgeneral_holds ? "holds" : "FAILS") << '\n';
  for (const auto& e : r.semigroup_gaps) {
    os << "  " << e.datum << " T=" << e.T << "  gap=" << e.lhs << "  bound=" << e.rhs
       << "  (int TV=" << e.tv_integral << ")  " << (e.holds ? "ok" : "VIOLATED") << '\n';
  }
  os << "stability bound " << (r.tmain_holds ? "holds" : "FAILS") << " on all entries\n";
  return os.str();
}

}  // namespace fluxstab
