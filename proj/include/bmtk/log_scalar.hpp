#ifndef BMTK_LOG_SCALAR_HPP
#define BMTK_LOG_SCALAR_HPP

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace bmtk {

// Signed scalar stored as sign + natural log of magnitude. Covers the
// extreme slopes (e^(2^n)) and widths (2^n e^(-2^n)) that plain doubles
// cannot represent. Round-trips with doubles whenever |log_mag| < 700.
struct LogScalar {
  int sign = 0;           // -1, 0, +1
  double log_mag = -std::numeric_limits<double>::infinity();

  LogScalar() = default;

  static LogScalar zero() { return LogScalar{}; }

  static LogScalar from_log(int sign, double log_mag) {
    LogScalar s;
    if (sign == 0) return s;
    if (sign != 1 && sign != -1) {
      throw std::runtime_error("log_scalar: sign must be -1, 0 or +1");
    }
    s.sign = sign;
    s.log_mag = log_mag;
    return s;
  }

  static LogScalar from_double(double v) {
    LogScalar s;
    if (v == 0.0) return s;
    if (!std::isfinite(v)) {
      throw std::runtime_error("log_scalar: cannot encode non-finite value");
    }
    s.sign = v > 0.0 ? 1 : -1;
    s.log_mag = std::log(std::fabs(v));
    return s;
  }

  bool is_zero() const { return sign == 0; }

  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_mag);  // may overflow to +-inf, by contract
  }

  LogScalar abs() const {
    LogScalar s = *this;
    if (s.sign < 0) s.sign = 1;
    return s;
  }

  LogScalar negate() const {
    LogScalar s = *this;
    s.sign = -s.sign;
    return s;
  }

  LogScalar mul(const LogScalar& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return from_log(sign * o.sign, log_mag + o.log_mag);
  }

  LogScalar div(const LogScalar& o) const {
    if (o.sign == 0) throw std::runtime_error("log_scalar: division by zero");
    if (sign == 0) return zero();
    return from_log(sign * o.sign, log_mag - o.log_mag);
  }

  // |x|^p, defined for x >= 0 only.
  LogScalar pow(double p) const {
    if (sign < 0) throw std::runtime_error("log_scalar: pow of negative value");
    if (sign == 0) return zero();
    return from_log(1, log_mag * p);
  }

  // log-sum-exp; opposite signs use log-diff-exp.
  LogScalar add(const LogScalar& o) const {
    if (sign == 0) return o;
    if (o.sign == 0) return *this;
    const LogScalar& big = log_mag >= o.log_mag ? *this : o;
    const LogScalar& small = log_mag >= o.log_mag ? o : *this;
    const double d = small.log_mag - big.log_mag;  // <= 0
    if (big.sign == small.sign) {
      return from_log(big.sign, big.log_mag + std::log1p(std::exp(d)));
    }
    if (big.log_mag == small.log_mag) return zero();
    const double m = -std::expm1(d);  // in [0, 1): 1 - e^d
    if (m == 0.0) return zero();
    return from_log(big.sign, big.log_mag + std::log(m));
  }

  LogScalar sub(const LogScalar& o) const { return add(o.negate()); }

  // Compare by value.
  int compare(const LogScalar& o) const {
    if (sign != o.sign) return sign < o.sign ? -1 : 1;
    if (sign == 0) return 0;
    if (log_mag == o.log_mag) return 0;
    const bool mag_less = log_mag < o.log_mag;
    if (sign > 0) return mag_less ? -1 : 1;
    return mag_less ? 1 : -1;
  }

  bool operator<(const LogScalar& o) const { return compare(o) < 0; }
  bool operator>(const LogScalar& o) const { return compare(o) > 0; }
  bool operator==(const LogScalar& o) const { return compare(o) == 0; }

  std::string str() const {
    if (sign == 0) return "0";
    std::string s = sign < 0 ? "-exp(" : "exp(";
    return s + std::to_string(log_mag) + ")";
  }
};

}  // namespace bmtk

#endif  // BMTK_LOG_SCALAR_HPP
