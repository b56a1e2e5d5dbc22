#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace qbloch {

using BigInt = boost::multiprecision::mpz_int;

/// Exact Laurent polynomial in q with arbitrary-precision integer coefficients.
///
/// Coefficients are held densely between the lowest and highest nonzero
/// exponent; both ends are always nonzero, so the zero polynomial is the
/// empty vector. `terms()` exposes the sparse view (nonzero entries only,
/// sorted by exponent), which is also what gets serialized.
class LaurentPoly {
 public:
  using Exponent = std::int64_t;

  LaurentPoly() = default;

  static LaurentPoly constant(BigInt c);
  static LaurentPoly monomial(BigInt c, Exponent e);
  static LaurentPoly from_terms(const std::vector<std::pair<Exponent, BigInt>>& terms);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  Exponent min_exponent() const noexcept { return low_; }
  Exponent max_exponent() const noexcept {
    return low_ + static_cast<Exponent>(coeffs_.size()) - 1;
  }
  BigInt coeff(Exponent e) const;

  /// Nonzero coefficients sorted by exponent.
  std::vector<std::pair<Exponent, BigInt>> terms() const;

  /// Dense coefficient block starting at `min_exponent()`.
  const std::vector<BigInt>& dense() const noexcept { return coeffs_; }

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const LaurentPoly& other);
  LaurentPoly& operator*=(const BigInt& scalar);

  /// Multiply by q^e.
  LaurentPoly& shift(Exponent e) noexcept;

  /// In place multiplication by (1 - q^j), j >= 1.
  LaurentPoly& mul_one_minus_q_pow(Exponent j);

  /// In place exact division by (1 - q^j), j >= 1. Throws DomainError when
  /// the division leaves a remainder.
  LaurentPoly& div_one_minus_q_pow(Exponent j);

  /// Sum of |coefficients|.
  BigInt norm1() const;

  /// Value at q = 1.
  BigInt at_one() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void normalize();

  Exponent low_ = 0;
  std::vector<BigInt> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p);

/// (q)_n = prod_{j=1}^n (1 - q^j).
LaurentPoly q_factorial(std::int64_t n);

/// (q)_d / (q)_e = prod_{j=e+1}^d (1 - q^j), for d >= e >= 0.
LaurentPoly q_factorial_ratio(std::int64_t d, std::int64_t e);

/// Gaussian binomial [n choose m]_q; throws DomainError unless 0 <= m <= n.
LaurentPoly q_binomial(std::int64_t n, std::int64_t m);

inline BigInt norm1(const LaurentPoly& f) { return f.norm1(); }

}  // namespace qbloch
