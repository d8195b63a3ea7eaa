#ifndef FLUXSTAB_HARNESS_DESCRIPTORS_HPP_
#define FLUXSTAB_HARNESS_DESCRIPTORS_HPP_

#include <string>
#include <vector>

#include "fluxstab/lax_oleinik.hpp"
#include "fluxstab/linear_hd.hpp"
#include "fluxstab/scalar_flux.hpp"

namespace fluxstab::harness {

/// Flux by name over the state interval K:
///   burgers | scaled_burgers a | shifted_burgers e | linear a |
///   convex_poly c2 c3 c4 | table u0 f0 u1 f1 ...
/// `table` yields a piecewise-linear flux; the rest are smooth.
AnyFlux parse_flux(const std::string& desc, Interval k);

/// Smooth flux only (throws ConfigError for tables).
ScalarFlux parse_smooth_flux(const std::string& desc, Interval k);

/// Piecewise-linear flux: tables as given, smooth fluxes interpolated on
/// `nodes` equally spaced nodes.
PiecewiseLinearFlux parse_pl_flux(const std::string& desc, Interval k, std::size_t nodes);

/// Initial datum:
///   riemann uL uR [x0] | pulse [h a b] | sawtooth n |
///   steps v0 x1 v1 x2 v2 ... | file path
InitialData parse_datum(const std::string& desc);

/// Finite step datum (sawtooth is rejected).
PiecewiseConstant parse_step_datum(const std::string& desc);

/// [[a,b],[c,d]] or a flat row-major list whose length is a square.
Matrix parse_matrix(const std::string& text);

/// Names accepted by parse_flux and parse_datum, one per line with usage.
std::vector<std::string> builtin_catalogue();

}  // namespace fluxstab::harness

#endif  // FLUXSTAB_HARNESS_DESCRIPTORS_HPP_
