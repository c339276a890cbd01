#ifndef STEINITZ_ERROR_HPP_
#define STEINITZ_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace steinitz {

enum class ErrorKind {
    reducible_polynomial,
    invalid_basis,
    invalid_argument,
    zero_ideal,
    unsupported_prime,
    inconsistent_congruences,
    leading_coefficient_vanishes,
    enumeration_bound_exceeded,
    scan_exhausted,
    closure_obstruction,
    degenerate_discriminant,
    search_budget_exhausted,
    parse_error,
    internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

}  // namespace steinitz

#endif
