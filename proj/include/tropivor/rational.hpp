#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalars and the infinity-extended bound type.
 *
 * Every predicate downstream is a sign condition on rational data, so all
 * arithmetic is exact: Rational is boost's arbitrary-precision rational
 * (always stored in lowest terms with positive denominator).  Bound extends
 * it with +infinity for unbounded polytrope entries.
 */

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace tropivor {

using Rational = boost::multiprecision::cpp_rational;
using Integer  = boost::multiprecision::cpp_int;

/// Error with a machine-readable kind ("parse", "precondition", "degeneracy",
/// "internal") used by the CLI to select exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

inline Error parse_error(const std::string& w) { return Error("parse", w); }
inline Error precondition_error(const std::string& w) { return Error("precondition", w); }
inline Error degeneracy_error(const std::string& w) { return Error("degeneracy", w); }
inline Error internal_error(const std::string& w) { return Error("internal", w); }

/// Parses "p", "-p", or "p/q" (q > 0 after normalization).  Throws on "p/0".
Rational parse_rational(const std::string& s);

/// Serializes as "p" or "p/q", always lowest terms, '-' on the numerator.
std::string to_string(const Rational& r);

inline int sign(const Rational& r) { return r.sign(); }

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// A rational or +infinity; used for polytrope bound matrices where +inf
/// means "no constraint on x_i - x_j".
struct Bound {
  bool inf = true;   // +infinity when true
  Rational v;        // meaningful iff !inf

  static Bound infinity() { return Bound{}; }
  static Bound of(Rational r) { return Bound{false, std::move(r)}; }

  bool operator==(const Bound& o) const {
    return inf == o.inf && (inf || v == o.v);
  }
  bool operator<(const Bound& o) const {  // +inf is the maximum
    if (inf) return false;
    if (o.inf) return true;
    return v < o.v;
  }
  bool operator<=(const Bound& o) const { return !(o < *this); }

  Bound operator+(const Bound& o) const {
    if (inf || o.inf) return infinity();
    return of(v + o.v);
  }
};

inline Bound min(const Bound& a, const Bound& b) { return a < b ? a : b; }

}  // namespace tropivor
