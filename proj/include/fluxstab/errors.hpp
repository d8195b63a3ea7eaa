#ifndef FLUXSTAB_ERRORS_HPP_
#define FLUXSTAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fluxstab {

// A numerical engine gave up: event explosion, vacuum, lost admissibility.
// Distinct from std::invalid_argument, which signals bad input.
class NumericalAbort : public std::runtime_error {
 public:
  explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

// A state left the compact set the flux is certified on.
class OutOfDomain : public std::domain_error {
 public:
  explicit OutOfDomain(const std::string& what) : std::domain_error(what) {}
};

}  // namespace fluxstab

#endif  // FLUXSTAB_ERRORS_HPP_
