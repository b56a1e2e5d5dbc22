#include "qbloch/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qbloch/errors.hpp"

namespace qbloch {

namespace {

cplx form_exp(const LinForm& f, std::span<const cplx> u) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) s += static_cast<double>(f.coeffs[i]) * u[i];
  return s;
}

cplx monomial(std::span<const cplx> z, const LinForm& f) {
  cplx p = 1.0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) p *= std::pow(z[i], static_cast<int>(f.coeffs[i]));
  return p;
}

bool has_half_log_pair(const QTerm& t) { return t.epsilon == -1 && !t.L.homogeneous_is_zero(); }

}  // namespace

void BlochElement::add(cplx z, std::int64_t m, double tol) {
  if (m == 0) return;
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    if (std::abs(it->first - z) < tol) {
      it->second += m;
      if (it->second == 0) terms.erase(it);
      return;
    }
  }
  terms.emplace_back(z, m);
}

void ExtBlochElement::add(const CHatPoint& w, std::int64_t m, double tol) {
  if (m == 0) return;
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    const auto& v = it->first;
    if (v.p == w.p && v.q == w.q && std::abs(v.z - w.z) < tol) {
      it->second += m;
      if (it->second == 0) terms.erase(it);
      return;
    }
  }
  terms.emplace_back(w, m);
}

BlochElement beta(const QTerm& t, std::span<const cplx> z, double tol) {
  const double res = var_residual(t, z);
  if (!(res <= tol))
    throw NotOnVarietyError("point does not solve the variational equations (residual " +
                            std::to_string(res) + ")");
  BlochElement e;
  for (const auto& f : t.factors) {
    if (f.form.homogeneous_is_zero()) continue;
    e.add(monomial(z, f.form), f.sign);
  }
  return e;
}

ExtBlochElement beta_hat(const QTerm& t, const CriticalPoint& cp) {
  ExtBlochElement e;
  if (has_half_log_pair(t)) {
    const auto h = half_log_point(cp.u, t.L);
    e.add(deck_shift(h.point, 0, 2 * cp.eps_branch), 1);
    e.add(h.point, -1);
  }
  for (std::size_t j = 0; j < t.factors.size(); ++j) {
    const auto& f = t.factors[j];
    if (f.form.homogeneous_is_zero()) continue;
    const std::int64_t p = j < cp.branch_A.size() ? cp.branch_A[j] : branch_integer(cp.u, f.form);
    e.add(CHatPoint::make(std::exp(form_exp(f.form, cp.u)), p, 0), f.sign);
  }
  return e;
}

ModZ1Value potential(const QTerm& t, std::span<const cplx> u, int eps_branch,
                     bool allow_unit_factors) {
  if (u.size() != t.dim()) throw DomainError("point has the wrong dimension");
  cplx quad = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j)
      quad += 0.5 * static_cast<double>(t.Q.matrix[i][j]) * u[i] * u[j];
  cplx v = quad / kTwoPiI;
  if (t.epsilon == -1 && !t.L.homogeneous_is_zero()) {
    const cplx log_zl = principal_log(std::exp(form_exp(t.L, u)));
    v += cplx(0.0, kPi * eps_branch) * log_zl / kTwoPiI;
  }
  for (const auto& f : t.factors) {
    if (f.form.homogeneous_is_zero()) continue;
    const cplx w = std::exp(form_exp(f.form, u));
    if (std::abs(w - 1.0) < 1e-14) {
      if (allow_unit_factors) continue;
      throw DomainError("z^{A_j} = 1 lies on the excluded divisor");
    }
    v += static_cast<double>(f.sign) * phi(w).representative;
  }
  return {v};
}

CVSet cv_from_points(const QTerm& t, const std::vector<CriticalPoint>& points, double tol,
                     bool allow_unit_factors) {
  CVSet out;
  out.tol = tol;
  for (const auto& cp : points) {
    const cplx v = potential(t, cp.u, cp.eps_branch, allow_unit_factors).exp_neg();
    const bool dup = std::any_of(out.values.begin(), out.values.end(), [&](cplx w) {
      return std::abs(w - v) < tol * std::max(1.0, std::abs(v));
    });
    if (!dup) out.values.push_back(v);
  }
  std::sort(out.values.begin(), out.values.end(), [](cplx a, cplx b) {
    if (std::abs(std::abs(a) - std::abs(b)) > 1e-12) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return out;
}

CVSet cv_set(const QTerm& t, const SolverConfig& cfg) {
  return cv_from_points(t, solve_variational(t, cfg));
}

ModZ2Value rogers_of_element(const ExtBlochElement& e) {
  cplx s = 0.0;
  for (const auto& [w, m] : e.terms) s += static_cast<double>(m) * rogers_hat(w).representative;
  return {s};
}

cplx bw_of_element(const BlochElement& e) {
  cplx s = 0.0;
  for (const auto& [z, m] : e.terms) s += static_cast<double>(m) * bloch_wigner(z);
  return s;
}

NuHatCertificate certify_nu_hat(const QTerm& t, const CriticalPoint& cp, double tol) {
  const auto fail = [](int clause, std::string why) { return NuHatCertificate{false, clause, std::move(why)}; };
  if (!t.Q.is_symmetric()) return fail(1, "Q is not symmetric");
  try {
    const auto F = varlog_residual(t, cp.u, cp.eps_branch);
    double worst = 0;
    for (const auto& f : F) worst = std::max(worst, std::abs(f));
    if (!(worst < tol)) return fail(2, "logarithmic variational residual " + std::to_string(worst));
  } catch (const Error& e) {
    return fail(2, e.what());
  }
  std::int64_t half_p = 0;
  if (has_half_log_pair(t)) {
    const auto h = half_log_point(cp.u, t.L);
    const cplx rel = principal_log(std::exp(form_exp(t.L, cp.u))) + 2.0 * h.point.log_z();
    const double k = rel.imag() / (kPi / 2.0);
    if (std::abs(rel.real()) > tol || std::abs(k - std::round(k)) > tol / kPi)
      return fail(3, "Log(z^L) + 2 Log(z^{-L/2}) is not in (pi i / 2) Z");
    half_p = h.point.p;
  }
  const auto odd = [](std::int64_t p) { return p % 2 != 0; };
  if (std::any_of(cp.branch_A.begin(), cp.branch_A.end(), odd) || odd(cp.branch_L) || odd(half_p))
    return fail(4, "odd branch integer");
  return {};
}

double certify_diagram(const QTerm& t, const CriticalPoint& cp) {
  const cplx lhs = potential(t, cp).exp_neg();
  const cplx rhs = std::exp(rogers_of_element(beta_hat(t, cp)).representative / kTwoPiI);
  return std::abs(lhs - rhs);
}

std::vector<QTerm> random_battery(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3), rdim(0, 2), nfac(1, 3), coin(0, 1);
  std::vector<QTerm> out;
  while (out.size() < count) {
    QTerm t;
    t.r = rdim(rng);
    const std::size_t d = t.dim();
    t.Q.matrix.assign(d, IntVec(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) t.Q.matrix[i][j] = t.Q.matrix[j][i] = coef(rng);
    t.Q.linear_twice.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::int64_t x = coef(rng);
      if ((t.Q.matrix[i][i] + x) % 2 != 0) x += x < 3 ? 1 : -1;
      t.Q.linear_twice[i] = x;
    }
    t.L.coeffs.resize(d);
    for (auto& c : t.L.coeffs) c = coef(rng);
    t.epsilon = coin(rng) ? 1 : -1;
    const int J = nfac(rng);
    for (int j = 0; j < J; ++j) {
      Factor f;
      f.form.coeffs.resize(d);
      for (auto& c : f.form.coeffs) c = coef(rng);
      f.sign = coin(rng) ? 1 : -1;
      if (!f.form.homogeneous_is_zero()) t.factors.push_back(std::move(f));
    }
    if (t.factors.empty()) continue;
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace qbloch
