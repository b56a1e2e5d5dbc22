#include "qbloch/variational.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "qbloch/errors.hpp"
#include "qbloch/parallel.hpp"

namespace qbloch {

namespace {

using MatC = Eigen::MatrixXcd;
using VecC = Eigen::VectorXcd;

cplx ipow(cplx z, std::int64_t e) {
  cplx base = e < 0 ? 1.0 / z : z, out = 1.0;
  for (std::uint64_t k = static_cast<std::uint64_t>(e < 0 ? -e : e); k; k >>= 1) {
    if (k & 1) out *= base;
    base *= base;
  }
  return out;
}

bool near_excluded(cplx z) { return std::abs(z) < 1e-300 || std::abs(z - 1.0) < 1e-14; }

// Homogeneous data of a q-term as seen by the variational machinery.
struct System {
  std::size_t d = 0;
  std::vector<std::vector<double>> Q;
  struct Fac {
    std::vector<double> v;
    double sign;
  };
  std::vector<Fac> facs;
  std::vector<double> Lv;

  // Factors constant along every variable in `vars` are dropped: their
  // coefficient in each imposed equation is zero.
  System(const QTerm& t, const std::vector<std::size_t>& vars) : d(t.dim()) {
    Q.assign(d, std::vector<double>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) Q[i][j] = static_cast<double>(t.Q.matrix[i][j]);
    for (const auto& f : t.factors) {
      if (std::all_of(vars.begin(), vars.end(), [&](std::size_t m) { return f.form.coeffs[m] == 0; }))
        continue;
      facs.push_back({std::vector<double>(f.form.coeffs.begin(), f.form.coeffs.end()),
                      static_cast<double>(f.sign)});
    }
    Lv.assign(t.L.coeffs.begin(), t.L.coeffs.end());
  }

  explicit System(const QTerm& t) : System(t, all_vars(t.dim())) {}

  static std::vector<std::size_t> all_vars(std::size_t d) {
    std::vector<std::size_t> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = i;
    return v;
  }

  static cplx lin(const std::vector<double>& v, std::span<const cplx> u) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * u[i];
    return s;
  }

  // Residual rows `eqs`; returns false if some e^{A(u)} leaves C**.
  bool residual(std::span<const cplx> u, cplx log_eps, const std::vector<std::size_t>& eqs,
                VecC& F) const {
    F = VecC::Zero(static_cast<Eigen::Index>(eqs.size()));
    std::vector<cplx> l1m(facs.size());
    for (std::size_t j = 0; j < facs.size(); ++j) {
      const cplx e = std::exp(lin(facs[j].v, u));
      if (near_excluded(e) || !std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
      l1m[j] = principal_log(1.0 - e);
    }
    for (std::size_t r = 0; r < eqs.size(); ++r) {
      const std::size_t i = eqs[r];
      cplx s = log_eps * Lv[i];
      for (std::size_t m = 0; m < d; ++m) s += Q[i][m] * u[m];
      for (std::size_t j = 0; j < facs.size(); ++j) s += facs[j].sign * facs[j].v[i] * l1m[j];
      F[static_cast<Eigen::Index>(r)] = s;
    }
    return true;
  }

  MatC jacobian(std::span<const cplx> u, const std::vector<std::size_t>& eqs,
                const std::vector<std::size_t>& vars) const {
    MatC J(static_cast<Eigen::Index>(eqs.size()), static_cast<Eigen::Index>(vars.size()));
    std::vector<cplx> g(facs.size());
    for (std::size_t j = 0; j < facs.size(); ++j) {
      const cplx e = std::exp(lin(facs[j].v, u));
      g[j] = -e / (1.0 - e);
    }
    for (std::size_t r = 0; r < eqs.size(); ++r) {
      for (std::size_t c = 0; c < vars.size(); ++c) {
        const std::size_t i = eqs[r], m = vars[c];
        cplx s = Q[i][m];
        for (std::size_t j = 0; j < facs.size(); ++j)
          s += facs[j].sign * facs[j].v[i] * facs[j].v[m] * g[j];
        J(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s;
      }
    }
    return J;
  }
};

std::vector<int> eps_choices(const QTerm& t) {
  if (t.epsilon == 1) return {0};
  if (t.L.homogeneous_is_zero()) return {1};
  return {1, -1};
}

bool in_strip(std::span<const cplx> u) {
  return std::all_of(u.begin(), u.end(),
                     [](cplx v) { return v.imag() > -kPi && v.imag() <= kPi + 1e-12; });
}

struct NewtonResult {
  CVec u;
  bool converged = false;
  bool singular = false;
  double residual = 0;
};

NewtonResult newton(const System& sys, CVec u, cplx log_eps, const std::vector<std::size_t>& vars,
                    const SolverConfig& cfg) {
  NewtonResult res;
  const std::vector<std::size_t>& eqs = vars;
  VecC F;
  if (!sys.residual(u, log_eps, eqs, F)) return res;
  double fn = F.cwiseAbs().maxCoeff();
  // Iterate somewhat past the tolerance; stops as soon as a step fails to help.
  for (int it = 0; it < cfg.max_iter && fn >= 1e-4 * cfg.newton_tol; ++it) {
    const MatC J = sys.jacobian(u, eqs, vars);
    const VecC step = J.colPivHouseholderQr().solve(F);
    if (!step.allFinite()) return res;
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h, lambda *= 0.5) {
      CVec trial = u;
      for (std::size_t c = 0; c < vars.size(); ++c)
        trial[vars[c]] -= lambda * step[static_cast<Eigen::Index>(c)];
      VecC Ft;
      if (!sys.residual(trial, log_eps, eqs, Ft)) continue;
      const double ft = Ft.cwiseAbs().maxCoeff();
      if (ft < fn) {
        u = std::move(trial);
        F = Ft;
        fn = ft;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  res.u = std::move(u);
  res.residual = fn;
  res.converged = fn < cfg.newton_tol;
  if (res.converged) {
    const MatC J = sys.jacobian(res.u, eqs, vars);
    // A small residual is not enough: iterates running off to infinity along a
    // flat direction have F ~ J ~ 0. Require the next correction to be small too.
    // Beyond |Re| = 30, 1 - e^{A(u)} rounds to 1 or -e^{A(u)} and F can vanish exactly.
    const auto huge = [](cplx v) { return std::abs(v.real()) > 30.0; };
    bool far = std::any_of(res.u.begin(), res.u.end(), huge);
    for (const auto& f : sys.facs) far = far || huge(System::lin(f.v, res.u));
    if (far) {
      res.converged = false;
      return res;
    }
    if (J.size() > 0) {
      const VecC corr = J.colPivHouseholderQr().solve(F);
      if (!corr.allFinite() || corr.cwiseAbs().maxCoeff() > cfg.dedup_tol) {
        res.converged = false;
        return res;
      }
    }
    if (J.size() > 0) {
      const Eigen::JacobiSVD<MatC> svd(J);
      const auto& s = svd.singularValues();
      res.singular = s[s.size() - 1] <= 1e-9 * std::max(1.0, s[0]);
    }
  }
  return res;
}

CriticalPoint finish_point(const QTerm& t, const NewtonResult& nr, int eps_branch,
                           const std::vector<std::size_t>& eqs) {
  CriticalPoint cp;
  cp.u = nr.u;
  cp.z.resize(cp.u.size());
  for (std::size_t i = 0; i < cp.u.size(); ++i) cp.z[i] = std::exp(cp.u[i]);
  cp.eps_branch = eps_branch;
  cp.residual_log = nr.residual;
  cp.jacobian_singular = nr.singular;
  // Multiplicative residual over the imposed equations only.
  const System sys(t, eqs);
  double mult = 0;
  for (const auto i : eqs) {
    cplx prod = (t.epsilon == -1 && t.L.coeffs[i] % 2 != 0) ? -1.0 : 1.0;
    for (std::size_t m = 0; m < sys.d; ++m) prod *= ipow(cp.z[m], t.Q.matrix[i][m]);
    for (const auto& f : sys.facs) prod *= ipow(1.0 - std::exp(System::lin(f.v, cp.u)),
                                                 static_cast<std::int64_t>(f.sign * f.v[i]));
    mult = std::max(mult, std::abs(prod - 1.0));
  }
  cp.residual_mult = mult;
  for (const auto& f : t.factors) cp.branch_A.push_back(branch_integer(cp.u, f.form));
  cp.branch_L = branch_integer(cp.u, t.L);
  return cp;
}

std::vector<CriticalPoint> multistart(const QTerm& t, const SolverConfig& cfg,
                                      const std::vector<std::size_t>& vars, cplx u0) {
  cfg.validate();
  t.validate();
  const System sys(t, vars);
  const auto choices = eps_choices(t);
  const std::size_t per = static_cast<std::size_t>(cfg.starts);
  const std::size_t total = per * choices.size();
  std::vector<std::optional<CriticalPoint>> found(total);

  parallel_for(total, [&](std::size_t idx) {
    const std::size_t c = idx / per, s = idx % per;
    std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(s),
                      static_cast<std::uint64_t>(c)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(-kPi, kPi);
    CVec u(sys.d, u0);
    for (const auto v : vars) u[v] = cplx(re(rng), im(rng));
    const cplx log_eps(0.0, kPi * choices[c]);
    const auto nr = newton(sys, std::move(u), log_eps, vars, cfg);
    if (!nr.converged) return;
    if (cfg.strip && !in_strip(nr.u)) return;
    try {
      found[idx] = finish_point(t, nr, choices[c], vars);
    } catch (const Error&) {
      // a point on the excluded divisor or with inconsistent branch data
    }
  });

  std::vector<CriticalPoint> out;
  for (auto& f : found) {
    if (!f) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const CriticalPoint& p) {
      if (p.eps_branch != f->eps_branch) return false;
      for (std::size_t i = 0; i < p.u.size(); ++i)
        if (std::abs(p.u[i] - f->u[i]) >= cfg.dedup_tol) return false;
      return true;
    });
    if (!dup) out.push_back(std::move(*f));
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    for (std::size_t i = 0; i < a.u.size(); ++i) {
      if (std::abs(a.u[i].imag() - b.u[i].imag()) > 1e-9) return a.u[i].imag() > b.u[i].imag();
      if (std::abs(a.u[i].real() - b.u[i].real()) > 1e-9) return a.u[i].real() < b.u[i].real();
    }
    return a.eps_branch > b.eps_branch;
  });
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (starts < 1) throw ConfigError("starts must be >= 1");
  if (!(newton_tol > 0) || !(dedup_tol > 0)) throw ConfigError("tolerances must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
}

double var_residual(const QTerm& t, std::span<const cplx> z) {
  if (z.size() != t.dim()) throw DomainError("point has the wrong dimension");
  for (const auto& v : z)
    if (near_excluded(v)) throw DomainError("z_i must lie in C \\ {0, 1}");
  std::vector<cplx> za;
  for (const auto& f : t.factors) {
    if (f.form.homogeneous_is_zero()) {
      za.push_back(0.0);
      continue;
    }
    cplx p = 1.0;
    for (std::size_t m = 0; m < z.size(); ++m) p *= ipow(z[m], f.form.coeffs[m]);
    if (near_excluded(p)) throw DomainError("z^A_j must lie in C \\ {0, 1}");
    za.push_back(p);
  }
  double worst = 0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    cplx prod = (t.epsilon == -1 && t.L.coeffs[i] % 2 != 0) ? -1.0 : 1.0;
    for (std::size_t m = 0; m < z.size(); ++m) prod *= ipow(z[m], t.Q.matrix[i][m]);
    for (std::size_t j = 0; j < t.factors.size(); ++j) {
      const auto& f = t.factors[j];
      if (f.form.homogeneous_is_zero()) continue;
      prod *= ipow(1.0 - za[j], f.sign * f.form.coeffs[i]);
    }
    worst = std::max(worst, std::abs(prod - 1.0));
  }
  return worst;
}

CVec varlog_residual(const QTerm& t, std::span<const cplx> u, std::optional<int> eps_branch) {
  if (u.size() != t.dim()) throw DomainError("point has the wrong dimension");
  for (const auto& v : u)
    if (near_excluded(std::exp(v))) throw DomainError("e^{u_i} must lie in C \\ {0, 1}");
  const System sys(t);
  const int eb = eps_branch.value_or(t.epsilon == -1 ? 1 : 0);
  std::vector<std::size_t> eqs(sys.d);
  for (std::size_t i = 0; i < sys.d; ++i) eqs[i] = i;
  VecC F;
  if (!sys.residual(u, cplx(0.0, kPi * eb), eqs, F))
    throw DomainError("e^{A_j(u)} must lie in C \\ {0, 1}");
  return CVec(F.data(), F.data() + F.size());
}

std::vector<CriticalPoint> solve_variational(const QTerm& t, const SolverConfig& cfg) {
  std::vector<std::size_t> vars(t.dim());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
  return multistart(t, cfg, vars, 0.0);
}

std::vector<CriticalPoint> solve_variational_slice(const QTerm& t, const SolverConfig& cfg,
                                                   cplx u0) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 1; i < t.dim(); ++i) vars.push_back(i);
  if (vars.empty()) return {};
  return multistart(t, cfg, vars, u0);
}

CVec solve_poly_1var(std::int64_t a, std::int64_t b, int eps) {
  if (a == 0 && b == 0) throw DegenerateFamilyError("(a, b) = (0, 0) gives no equation");
  if (b < 0) throw DomainError("b must be nonnegative");
  if (eps != 1 && eps != -1) throw DomainError("eps must be +1 or -1");
  // eps z^{max(a,0)} (1-z)^b - z^{max(-a,0)} = 0
  const std::int64_t za = std::max<std::int64_t>(a, 0), zb = std::max<std::int64_t>(-a, 0);
  std::vector<double> c(static_cast<std::size_t>(std::max(za + b, zb) + 1), 0.0);
  double binom = 1.0;
  for (std::int64_t k = 0; k <= b; ++k) {
    c[static_cast<std::size_t>(za + k)] += eps * binom * (k % 2 ? -1.0 : 1.0);
    binom = binom * static_cast<double>(b - k) / static_cast<double>(k + 1);
  }
  c[static_cast<std::size_t>(zb)] -= 1.0;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  const auto deg = static_cast<Eigen::Index>(c.size()) - 1;
  if (deg < 1) return {};
  const auto eval = [&](cplx z, cplx& dp) {
    cplx p = 0.0;
    dp = 0.0;
    for (auto k = c.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
    return p;
  };
  MatC comp = MatC::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i)
    comp(i, deg - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  const Eigen::ComplexEigenSolver<MatC> es(comp, false);
  CVec roots;
  for (Eigen::Index i = 0; i < deg; ++i) {
    cplx z = es.eigenvalues()[i];
    for (int it = 0; it < 50; ++it) {
      cplx dp;
      const cplx p = eval(z, dp);
      if (dp == 0.0) break;
      const cplx dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    if (std::abs(z) < 1e-12 || std::abs(z - 1.0) < 1e-12) continue;
    const bool dup = std::any_of(roots.begin(), roots.end(),
                                 [&](cplx w) { return std::abs(w - z) < 1e-8; });
    if (!dup) roots.push_back(z);
  }
  std::sort(roots.begin(), roots.end(), [](cplx x, cplx y) {
    if (std::abs(x.imag() - y.imag()) > 1e-12) return x.imag() > y.imag();
    return x.real() < y.real();
  });
  return roots;
}

std::int64_t branch_integer(std::span<const cplx> u, const LinForm& A) {
  if (A.homogeneous_is_zero()) return 0;
  cplx s = 0.0;
  for (std::size_t i = 0; i < A.coeffs.size(); ++i) s += static_cast<double>(A.coeffs[i]) * u[i];
  const cplx p = (s - principal_log(std::exp(s))) / cplx(0.0, kPi);
  const double r = std::round(p.real());
  if (std::abs(p - r) > 1e-8)
    throw BranchParityError("branch integer is not an integer: " + std::to_string(p.real()));
  const auto k = static_cast<std::int64_t>(r);
  if (k % 2 != 0) throw BranchParityError("branch integer " + std::to_string(k) + " is odd");
  return k;
}

HalfLog half_log_point(std::span<const cplx> u, const LinForm& L) {
  HalfLog h;
  if (L.homogeneous_is_zero()) {
    h.ell = 0.0;
    h.point = {1.0, 0, 0};
    h.degenerate = true;
    return h;
  }
  cplx s = 0.0;
  for (std::size_t i = 0; i < L.coeffs.size(); ++i) s += static_cast<double>(L.coeffs[i]) * u[i];
  h.ell = -principal_log(std::exp(s)) + 0.5 * s;
  const cplx value = std::exp(h.ell);
  const double p = ((h.ell - principal_log(value)) / cplx(0.0, kPi)).real();
  h.point = CHatPoint::make(value, 2 * static_cast<std::int64_t>(std::llround(p / 2.0)), 0);
  return h;
}

}  // namespace qbloch
