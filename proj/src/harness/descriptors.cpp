#include "fluxstab/harness/descriptors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fluxstab/harness/config.hpp"

namespace fluxstab::harness {

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::vector<double> numbers(const std::vector<std::string>& w, std::size_t from,
                            const std::string& what) {
  std::vector<double> out;
  for (std::size_t i = from; i < w.size(); ++i) out.push_back(parse_double(w[i], what));
  return out;
}

void want(const std::vector<double>& args, std::size_t lo, std::size_t hi, const std::string& what) {
  if (args.size() < lo || args.size() > hi) {
    throw ConfigError(what + ": wrong number of parameters");
  }
}

}  // namespace

AnyFlux parse_flux(const std::string& desc, Interval k) {
  const auto w = words(desc);
  if (w.empty()) throw ConfigError("empty flux descriptor");
  const std::string& name = w[0];
  const auto a = numbers(w, 1, "flux '" + desc + "'");
  try {
    if (name == "burgers") {
      want(a, 0, 0, name);
      return burgers(k);
    }
    if (name == "scaled_burgers") {
      want(a, 1, 1, name);
      return scaled_burgers(a[0], k);
    }
    if (name == "shifted_burgers") {
      want(a, 1, 1, name);
      return shifted_burgers(a[0], k);
    }
    if (name == "linear") {
      want(a, 1, 1, name);
      return linear_flux(a[0], k);
    }
    if (name == "convex_poly") {
      want(a, 3, 3, name);
      return convex_poly(a[0], a[1], a[2], k);
    }
    if (name == "table") {
      if (a.size() < 4 || a.size() % 2 != 0) throw ConfigError("table: need pairs u f, at least two");
      std::vector<double> u, f;
      for (std::size_t i = 0; i < a.size(); i += 2) {
        u.push_back(a[i]);
        f.push_back(a[i + 1]);
      }
      return PiecewiseLinearFlux(std::move(u), std::move(f), "table");
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("flux '" + desc + "': " + e.what());
  }
  throw ConfigError("unknown flux '" + name + "'");
}

ScalarFlux parse_smooth_flux(const std::string& desc, Interval k) {
  AnyFlux f = parse_flux(desc, k);
  if (const auto* s = std::get_if<ScalarFlux>(&f)) return *s;
  throw ConfigError("flux '" + desc + "' must be smooth here");
}

PiecewiseLinearFlux parse_pl_flux(const std::string& desc, Interval k, std::size_t nodes) {
  AnyFlux f = parse_flux(desc, k);
  if (const auto* pl = std::get_if<PiecewiseLinearFlux>(&f)) return *pl;
  try {
    return PiecewiseLinearFlux::interpolate(std::get<ScalarFlux>(f), nodes);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("flux interpolation: ") + e.what());
  }
}

PiecewiseConstant parse_step_datum(const std::string& desc) {
  const auto w = words(desc);
  if (w.empty()) throw ConfigError("empty datum descriptor");
  const std::string& name = w[0];
  if (name == "file") {
    if (w.size() != 2) throw ConfigError("file: expected one path");
    std::ifstream in(w[1]);
    if (!in) throw ConfigError("cannot open datum file '" + w[1] + "'");
    try {
      return read_text(in);
    } catch (const std::exception& e) {
      throw ConfigError("datum file '" + w[1] + "': " + e.what());
    }
  }
  const auto a = numbers(w, 1, "datum '" + desc + "'");
  try {
    if (name == "riemann") {
      want(a, 2, 3, name);
      return PiecewiseConstant::scalar({a.size() == 3 ? a[2] : 0.0}, {a[0], a[1]});
    }
    if (name == "pulse") {
      if (a.empty()) return PiecewiseConstant::scalar({0.0, 1.0}, {0.0, 1.0, 0.0});
      want(a, 3, 3, name);
      return PiecewiseConstant::scalar({a[1], a[2]}, {0.0, a[0], 0.0});
    }
    if (name == "steps") {
      if (a.size() % 2 != 1) throw ConfigError("steps: expected v0 x1 v1 ... xm vm");
      std::vector<double> br, vals{a[0]};
      for (std::size_t i = 1; i < a.size(); i += 2) {
        br.push_back(a[i]);
        vals.push_back(a[i + 1]);
      }
      return PiecewiseConstant::scalar(std::move(br), std::move(vals));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError("datum '" + desc + "': " + e.what());
  }
  if (name == "sawtooth") throw ConfigError("sawtooth data have infinitely many jumps; not usable here");
  throw ConfigError("unknown datum '" + name + "'");
}

InitialData parse_datum(const std::string& desc) {
  const auto w = words(desc);
  if (!w.empty() && w[0] == "sawtooth") {
    if (w.size() != 2) throw ConfigError("sawtooth: expected n");
    const double n = parse_double(w[1], "sawtooth n");
    if (n < 1 || n != std::floor(n)) throw ConfigError("sawtooth: n must be a positive integer");
    return InitialData::sawtooth(static_cast<int>(n));
  }
  return InitialData::steps(parse_step_datum(desc));
}

Matrix parse_matrix(const std::string& text) {
  std::size_t rows = 0;
  int depth = 0;
  for (char c : text) {
    if (c == '[' && ++depth == 2) ++rows;
    if (c == ']') --depth;
  }
  const auto vals = parse_number_list(
      [&] {
        std::string t = text;
        for (char& c : t) {
          if (c == '[' || c == ']') c = ' ';
        }
        return t;
      }(),
      "matrix");
  std::size_t n = rows;
  if (n == 0) n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(vals.size()))));
  if (n == 0 || n * n != vals.size()) throw ConfigError("matrix '" + text + "' is not square");
  return Matrix::from_rows(n, vals);
}

std::vector<std::string> builtin_catalogue() {
  return {
      "flux  burgers                 u^2/2",
      "flux  scaled_burgers a        a u^2/2",
      "flux  shifted_burgers e       u^2/2 + e u",
      "flux  linear a                a u",
      "flux  convex_poly c2 c3 c4    c2 u^2 + c3 u^3 + c4 u^4",
      "flux  table u0 f0 u1 f1 ...   piecewise-linear through the given nodes",
      "datum riemann uL uR [x0]      single jump at x0 (default 0)",
      "datum pulse [h a b]           h on [a, b), 0 elsewhere (default 1 0 1)",
      "datum sawtooth n              +1 on [k 2^(1-n), k 2^(1-n) + 2^-n], -1 elsewhere",
      "datum steps v0 x1 v1 ...      step function with jumps at x1 < x2 < ...",
      "datum file path               step function in the text format (dim 1)",
  };
}

}  // namespace fluxstab::harness
