#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace qbloch {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kZeta2 = kPi * kPi / 6.0;
inline constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

/// Principal logarithm, Im in (-pi, pi]. A negative zero imaginary part is
/// read as +0, so the negative real axis always maps to +i*pi.
cplx principal_log(cplx z);

/// Principal-branch dilogarithm. On the cut [1, inf) the value from the
/// z - 0i side is returned, e.g. li2(2) = pi^2/4 - i*pi*log 2.
cplx li2(cplx z);

namespace detail {
/// sum z^k / k^2; valid for |z| < 1, used directly on |z| <= 1/2.
cplx li2_power_series(cplx z);
/// Li2(w) from u = -Log(1 - w) through the Bernoulli expansion; |u| < 2 pi.
cplx li2_bernoulli(cplx u);
}  // namespace detail

/// Bloch-Wigner function, returned as the purely imaginary number
/// i * Im(Li2(z) + Log(1 - z) log|z|). Zero at 0 and 1.
cplx bloch_wigner(cplx z);

/// A point (z; p, q) of the abelian cover of C \ {0, 1}, p and q even.
struct CHatPoint {
  cplx z;
  std::int64_t p = 0;
  std::int64_t q = 0;

  /// Throws DomainError for z in {0, 1}, OddShiftError for odd p or q.
  static CHatPoint make(cplx z, std::int64_t p = 0, std::int64_t q = 0);

  cplx log_z() const { return principal_log(z) + cplx(0.0, kPi * static_cast<double>(p)); }
  cplx log_1mz() const {
    return principal_log(1.0 - z) + cplx(0.0, kPi * static_cast<double>(q));
  }

  friend bool operator==(const CHatPoint&, const CHatPoint&) = default;
};

/// Complex number modulo Z(2) = (2 pi i)^2 Z = 4 pi^2 Z (real shifts).
struct ModZ2Value {
  cplx representative;

  /// Real part reduced into [0, 4 pi^2).
  cplx canonical() const;
  /// Distance between the classes.
  double distance(const ModZ2Value& other) const;
  /// Distance from the zero class.
  double magnitude() const { return distance(ModZ2Value{}); }
};

/// Complex number modulo Z(1) = 2 pi i Z (imaginary shifts).
struct ModZ1Value {
  cplx representative;

  /// Imaginary part reduced into [0, 2 pi).
  cplx canonical() const;
  double distance(const ModZ1Value& other) const;
  /// exp(-value); well defined on the class.
  cplx exp_neg() const { return std::exp(-representative); }
};

/// R^(z; p, q) = Li2(z) + 1/2 (Log z + pi i p)(Log(1-z) + pi i q) - pi^2/6.
ModZ2Value rogers_hat(const CHatPoint& w);

/// Phi(z) = (pi^2/6 - Li2(z)) / (2 pi i); z = 0 is allowed as the limit.
ModZ1Value phi(cplx z);

/// (z; p + dp, q + dq); throws OddShiftError unless dp and dq are even.
CHatPoint deck_shift(const CHatPoint& w, std::int64_t dp, std::int64_t dq);

/// |sum_i (-1)^i D2(x_i)| over the five-term tuple built from (x, y).
/// Throws DegenerateTupleError if an argument is 0 or 1.
double five_term_defect_D2(cplx x, cplx y);

/// |sum_i (-1)^i R^(x_i; 0, 0)| mod Z(2) for 0 < y < x < 1.
/// Throws DomainError outside that region.
double five_term_defect_rogers(double x, double y);

}  // namespace qbloch
