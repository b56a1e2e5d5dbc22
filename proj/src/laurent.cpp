#include "qbloch/laurent.hpp"

#include <algorithm>
#include <ostream>

#include "qbloch/errors.hpp"

namespace qbloch {

LaurentPoly LaurentPoly::constant(BigInt c) { return monomial(std::move(c), 0); }

LaurentPoly LaurentPoly::monomial(BigInt c, Exponent e) {
  LaurentPoly p;
  if (c != 0) {
    p.low_ = e;
    p.coeffs_.push_back(std::move(c));
  }
  return p;
}

LaurentPoly LaurentPoly::from_terms(const std::vector<std::pair<Exponent, BigInt>>& terms) {
  LaurentPoly p;
  for (const auto& [e, c] : terms) p += monomial(c, e);
  return p;
}

BigInt LaurentPoly::coeff(Exponent e) const {
  if (coeffs_.empty() || e < low_ || e > max_exponent()) return 0;
  return coeffs_[static_cast<std::size_t>(e - low_)];
}

std::vector<std::pair<LaurentPoly::Exponent, BigInt>> LaurentPoly::terms() const {
  std::vector<std::pair<Exponent, BigInt>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) out.emplace_back(low_ + static_cast<Exponent>(i), coeffs_[i]);
  }
  return out;
}

void LaurentPoly::normalize() {
  std::size_t hi = coeffs_.size();
  while (hi > 0 && coeffs_[hi - 1] == 0) --hi;
  coeffs_.resize(hi);
  std::size_t lo = 0;
  while (lo < coeffs_.size() && coeffs_[lo] == 0) ++lo;
  if (lo > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lo));
    low_ += static_cast<Exponent>(lo);
  }
  if (coeffs_.empty()) low_ = 0;
}

namespace {

// Adds sign * other into self, growing the dense block as needed.
void accumulate(std::vector<BigInt>& self, LaurentPoly::Exponent& low,
                const LaurentPoly& other, int sign) {
  if (other.is_zero()) return;
  if (self.empty()) {
    low = other.min_exponent();
    self = other.dense();
    if (sign < 0)
      for (auto& c : self) c = -c;
    return;
  }
  const auto new_low = std::min(low, other.min_exponent());
  const auto new_high =
      std::max(low + static_cast<LaurentPoly::Exponent>(self.size()) - 1, other.max_exponent());
  if (new_low < low) {
    self.insert(self.begin(), static_cast<std::size_t>(low - new_low), BigInt(0));
    low = new_low;
  }
  self.resize(static_cast<std::size_t>(new_high - low + 1));
  const auto offset = static_cast<std::size_t>(other.min_exponent() - low);
  const auto& src = other.dense();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (sign > 0)
      self[offset + i] += src[i];
    else
      self[offset + i] -= src[i];
  }
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  accumulate(coeffs_, low_, other, +1);
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  accumulate(coeffs_, low_, other, -1);
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& other) {
  if (is_zero() || other.is_zero()) {
    *this = LaurentPoly();
    return *this;
  }
  const auto& b = other.coeffs_;
  std::vector<BigInt> out(coeffs_.size() + b.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) out[i + j] += coeffs_[i] * b[j];
    }
  }
  coeffs_ = std::move(out);
  low_ += other.low_;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const BigInt& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::shift(Exponent e) noexcept {
  if (!coeffs_.empty()) low_ += e;
  return *this;
}

LaurentPoly& LaurentPoly::mul_one_minus_q_pow(Exponent j) {
  if (j <= 0) throw DomainError("mul_one_minus_q_pow: exponent must be positive");
  if (is_zero()) return *this;
  const auto n = coeffs_.size();
  const auto step = static_cast<std::size_t>(j);
  coeffs_.resize(n + step);
  // Descending so every read sees an unmodified coefficient.
  for (std::size_t i = n; i-- > 0;) coeffs_[i + step] -= coeffs_[i];
  normalize();
  return *this;
}

LaurentPoly& LaurentPoly::div_one_minus_q_pow(Exponent j) {
  if (j <= 0) throw DomainError("div_one_minus_q_pow: exponent must be positive");
  if (is_zero()) return *this;
  const auto step = static_cast<std::size_t>(j);
  if (coeffs_.size() <= step) throw DomainError("div_one_minus_q_pow: inexact division");
  // f = g (1 - q^j)  =>  g[t] = f[t] + g[t - j]
  const std::size_t m = coeffs_.size() - step;
  std::vector<BigInt> g(m);
  for (std::size_t t = 0; t < m; ++t) {
    g[t] = coeffs_[t];
    if (t >= step) g[t] += g[t - step];
  }
  // The top j coefficients of f must equal -g[t - j].
  for (std::size_t t = m; t < coeffs_.size(); ++t) {
    const BigInt expect = t >= step ? BigInt(-g[t - step]) : BigInt(0);
    if (coeffs_[t] != expect) throw DomainError("div_one_minus_q_pow: inexact division");
  }
  coeffs_ = std::move(g);
  normalize();
  return *this;
}

BigInt LaurentPoly::norm1() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += abs(c);
  return s;
}

BigInt LaurentPoly::at_one() const {
  BigInt s = 0;
  for (const auto& c : coeffs_) s += c;
  return s;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const BigInt a = abs(c);
    if (e == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a << "*";
    os << "q";
    if (e != 1) os << "^" << e;
  }
  return os;
}

LaurentPoly q_factorial(std::int64_t n) { return q_factorial_ratio(n, 0); }

LaurentPoly q_factorial_ratio(std::int64_t d, std::int64_t e) {
  if (e < 0 || d < e) throw DomainError("q_factorial_ratio requires d >= e >= 0");
  auto p = LaurentPoly::constant(1);
  for (std::int64_t j = e + 1; j <= d; ++j) p.mul_one_minus_q_pow(j);
  return p;
}

LaurentPoly q_binomial(std::int64_t n, std::int64_t m) {
  if (m < 0 || m > n) throw DomainError("q_binomial requires 0 <= m <= n");
  m = std::min(m, n - m);
  // After step i the accumulator is [n - m + i choose i]_q, always a polynomial.
  auto p = LaurentPoly::constant(1);
  for (std::int64_t i = 1; i <= m; ++i) {
    p.mul_one_minus_q_pow(n - m + i);
    p.div_one_minus_q_pow(i);
  }
  return p;
}

}  // namespace qbloch
