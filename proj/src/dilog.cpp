#include "qbloch/dilog.hpp"

#include <array>
#include <cmath>

#include "qbloch/errors.hpp"

namespace qbloch {

namespace {

constexpr double kFourPi2 = 4.0 * kPi * kPi;

// B_{2j} / (2j+1)!, j = 1..22
constexpr std::array<double, 22> kBernoulliCoeffs = {
    2.7777777777777777778e-2,   -2.7777777777777777778e-4,  4.7241118669690098262e-6,
    -9.1857730746619635509e-8,  1.8978869988970999072e-9,   -4.0647616451442255268e-11,
    8.9216910204564525552e-13,  -1.9939295860721075687e-14, 4.5189800296199181917e-16,
    -1.0356517612181247014e-17, 2.3952186210261867457e-19,  -5.5817858743250093363e-21,
    1.3091507554183212858e-22,  -3.0874198024267402932e-24, 7.3159756527022034204e-26,
    -1.740845657234000741e-27,  4.1576356446138997196e-29,  -9.9621484882846221032e-31,
    2.3940344248961653005e-32,  -5.7683473553673900843e-34, 1.3931794796470079778e-35,
    -3.3721219654850894705e-37,
};

cplx li2_complex(cplx z) {
  const double nz = std::norm(z);
  if (nz <= 0.25) return detail::li2_power_series(z);
  if (nz <= 1.0) {
    if (z.real() <= 0.5) return detail::li2_bernoulli(-principal_log(1.0 - z));
    // reflection
    const cplx lz = principal_log(z);
    return -detail::li2_bernoulli(-lz) + kZeta2 - lz * principal_log(1.0 - z);
  }
  // inversion: Li2(z) + Li2(1/z) = -pi^2/6 - Log(-z)^2 / 2
  const cplx w = 1.0 / z;
  const cplx lmz = principal_log(-z);
  const cplx base = -kZeta2 - 0.5 * lmz * lmz;
  if (std::norm(w) <= 0.25) return base - detail::li2_power_series(w);
  if (w.real() <= 0.5) return base - detail::li2_bernoulli(-principal_log(1.0 - w));
  const cplx lw = principal_log(w);
  return base - (-detail::li2_bernoulli(-lw) + kZeta2 - lw * principal_log(1.0 - w));
}

double li2_real_below_one(double x) { return li2_complex(cplx(x, 0.0)).real(); }

}  // namespace

cplx principal_log(cplx z) {
  if (z.imag() == 0.0) z = cplx(z.real(), 0.0);  // drops a negative zero
  return std::log(z);
}

namespace detail {

cplx li2_power_series(cplx z) {
  cplx sum = 0.0, zk = z;
  for (int k = 1; k < 4000; ++k) {
    const cplx term = zk / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    zk *= z;
  }
  return sum;
}

cplx li2_bernoulli(cplx u) {
  const cplx u2 = u * u;
  cplx acc = 0.0;
  for (auto it = kBernoulliCoeffs.rbegin(); it != kBernoulliCoeffs.rend(); ++it) acc = acc * u2 + *it;
  return u - 0.25 * u2 + acc * u2 * u;
}

}  // namespace detail

cplx li2(cplx z) {
  if (z.imag() == 0.0) {
    const double x = z.real();
    if (x == 0.0) return 0.0;
    if (x == 1.0) return kZeta2;
    if (x < 1.0) return li2_real_below_one(x);
    // z - 0i side of the cut
    const double lx = std::log(x);
    return {2.0 * kZeta2 - 0.5 * lx * lx - li2_real_below_one(1.0 / x), -kPi * lx};
  }
  return li2_complex(z);
}

cplx bloch_wigner(cplx z) {
  if (z == cplx(0.0) || z == cplx(1.0)) return 0.0;
  const cplx v = li2(z) + principal_log(1.0 - z) * std::log(std::abs(z));
  return {0.0, v.imag()};
}

CHatPoint CHatPoint::make(cplx z, std::int64_t p, std::int64_t q) {
  if (z == cplx(0.0) || z == cplx(1.0)) throw DomainError("cover point requires z outside {0, 1}");
  if (p % 2 != 0 || q % 2 != 0) throw OddShiftError("cover point branch integers must be even");
  return {z, p, q};
}

cplx ModZ2Value::canonical() const {
  double re = std::fmod(representative.real(), kFourPi2);
  if (re < 0) re += kFourPi2;
  return {re, representative.imag()};
}

double ModZ2Value::distance(const ModZ2Value& other) const {
  const cplx d = representative - other.representative;
  const double k = std::round(d.real() / kFourPi2);
  return std::abs(d - cplx(k * kFourPi2, 0.0));
}

cplx ModZ1Value::canonical() const {
  double im = std::fmod(representative.imag(), 2.0 * kPi);
  if (im < 0) im += 2.0 * kPi;
  return {representative.real(), im};
}

double ModZ1Value::distance(const ModZ1Value& other) const {
  const cplx d = representative - other.representative;
  const double k = std::round(d.imag() / (2.0 * kPi));
  return std::abs(d - cplx(0.0, k * 2.0 * kPi));
}

ModZ2Value rogers_hat(const CHatPoint& w) {
  return {li2(w.z) + 0.5 * w.log_z() * w.log_1mz() - kZeta2};
}

ModZ1Value phi(cplx z) { return {(kZeta2 - li2(z)) / kTwoPiI}; }

CHatPoint deck_shift(const CHatPoint& w, std::int64_t dp, std::int64_t dq) {
  if (dp % 2 != 0 || dq % 2 != 0) throw OddShiftError("deck shifts must be even");
  return {w.z, w.p + dp, w.q + dq};
}

namespace {

std::array<cplx, 5> five_term_tuple(cplx x, cplx y) {
  const auto bad = [](cplx v) { return std::abs(v) < 1e-14 || std::abs(v - 1.0) < 1e-14; };
  if (bad(x) || bad(y)) throw DegenerateTupleError("five-term arguments x, y must avoid {0, 1}");
  const std::array<cplx, 5> t = {x, y, y / x, (1.0 - 1.0 / x) / (1.0 - 1.0 / y), (1.0 - x) / (1.0 - y)};
  for (const auto& v : t)
    if (bad(v) || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DegenerateTupleError("five-term tuple hits {0, 1}");
  return t;
}

}  // namespace

double five_term_defect_D2(cplx x, cplx y) {
  const auto t = five_term_tuple(x, y);
  cplx s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i % 2 == 0 ? 1.0 : -1.0) * bloch_wigner(t[i]);
  return std::abs(s);
}

double five_term_defect_rogers(double x, double y) {
  if (!(0.0 < y && y < x && x < 1.0)) throw DomainError("five_term_defect_rogers requires 0 < y < x < 1");
  const auto t = five_term_tuple(x, y);
  ModZ2Value s{};
  for (std::size_t i = 0; i < t.size(); ++i)
    s.representative += (i % 2 == 0 ? 1.0 : -1.0) * rogers_hat(CHatPoint::make(t[i])).representative;
  return s.magnitude();
}

}  // namespace qbloch
