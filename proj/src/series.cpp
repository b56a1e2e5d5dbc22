#include "qbloch/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "qbloch/errors.hpp"
#include "qbloch/parallel.hpp"

namespace qbloch {

namespace {

using HP = boost::multiprecision::cpp_bin_float_50;
using HPC = boost::multiprecision::cpp_complex_50;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t mod(std::int64_t a, std::int64_t n) { return a - n * floor_div(a, n); }

// Powers of zeta = e^{2 pi i/n}: pow[j] = zeta^j, om[j] = 1 - zeta^j.
struct RootTable {
  std::int64_t n;
  std::vector<cplx> pow, om;

  explicit RootTable(std::int64_t n_) : n(n_), pow(static_cast<std::size_t>(n_)), om(pow.size()) {
    for (std::int64_t j = 0; j < n; ++j) {
      const double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
      const double s = std::sin(0.5 * th);
      pow[static_cast<std::size_t>(j)] = {std::cos(th), std::sin(th)};
      om[static_cast<std::size_t>(j)] = {2.0 * s * s, -std::sin(th)};
    }
  }
  cplx zeta(std::int64_t e) const { return pow[static_cast<std::size_t>(mod(e, n))]; }
  cplx one_minus(std::int64_t e) const { return om[static_cast<std::size_t>(mod(e, n))]; }
};

double binom_double(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return 0.0;
  b = std::min(b, a - b);
  double r = 1.0;
  for (std::int64_t i = 1; i <= b; ++i) r = r * static_cast<double>(a - b + i) / static_cast<double>(i);
  return r;
}

cplx eval_at_root(const SpecialQTerm& t, std::span<const std::int64_t> k, const RootTable& w) {
  const std::int64_t n = w.n;
  cplx v = w.zeta(t.Q(k));
  if (t.epsilon == -1 && t.L(k) % 2 != 0) v = -v;
  for (const auto& blk : t.quads) {
    const auto b = blk.B(k), c = blk.C(k), d = blk.D(k), e = blk.E(k);
    // q-Lucas: [b, c]_zeta = binom(b div n, c div n) [b mod n, c mod n]_zeta
    const auto br = b % n, cr = c % n;
    if (cr > br) return 0.0;
    v *= binom_double(b / n, c / n);
    for (std::int64_t i = 1; i <= cr; ++i) v *= w.one_minus(br - cr + i) / w.one_minus(i);
    if (d / n > e / n) return 0.0;  // some multiple of n in (e, d]
    for (std::int64_t j = e + 1; j <= d; ++j) v *= w.one_minus(j);
  }
  return v;
}

cplx numeric_coefficient(const SpecialQTerm& t, std::int64_t n) {
  const RootTable w(n);
  IntVec k(t.dim());
  k[0] = n;
  cplx sum = 0.0;
  for (const auto& kp : newton_polytope_points(t, n)) {
    std::copy(kp.begin(), kp.end(), k.begin() + 1);
    sum += eval_at_root(t, k, w);
  }
  return sum;
}

// Integer polynomials in Z[q]/(q^n - 1). Since zeta^n = 1 the reduction is
// exact for evaluation at zeta, and (1 - q^j) multiplies in O(n).
struct Cyclic {
  std::vector<BigInt> c;

  explicit Cyclic(std::int64_t n) : c(static_cast<std::size_t>(n)) {}

  std::int64_t n() const { return static_cast<std::int64_t>(c.size()); }

  void mul_one_minus(std::int64_t j) {
    const auto s = static_cast<std::size_t>(mod(j, n()));
    if (s == 0) {
      std::fill(c.begin(), c.end(), BigInt(0));
      return;
    }
    const auto old = c;
    for (std::size_t i = 0; i < c.size(); ++i) c[(i + s) % c.size()] -= old[i];
  }

  void mul(const LaurentPoly& p) {
    std::vector<BigInt> f(c.size());
    for (const auto& [e, v] : p.terms()) f[static_cast<std::size_t>(mod(e, n()))] += v;
    std::vector<BigInt> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < f.size(); ++j)
        if (f[j] != 0) out[(i + j) % c.size()] += c[i] * f[j];
    }
    c = std::move(out);
  }
};

// a_{t,n}(q) mod q^n - 1: same arithmetic as eval_special_exact, folded.
std::vector<BigInt> folded_sequence_poly(const SpecialQTerm& t, std::int64_t n) {
  Cyclic sum(n);
  IntVec k(t.dim());
  k[0] = n;
  for (const auto& kp : newton_polytope_points(t, n)) {
    std::copy(kp.begin(), kp.end(), k.begin() + 1);
    Cyclic p(n);
    p.c[static_cast<std::size_t>(mod(t.Q(k), n))] = (t.epsilon == -1 && t.L(k) % 2 != 0) ? -1 : 1;
    for (const auto& blk : t.quads) {
      const auto b = blk.B(k), c = blk.C(k), d = blk.D(k), e = blk.E(k);
      if (c > 0 && c < b) p.mul(q_binomial(b, c));
      for (std::int64_t j = e + 1; j <= d; ++j) p.mul_one_minus(j);
    }
    for (std::size_t i = 0; i < sum.c.size(); ++i) sum.c[i] += p.c[i];
  }
  return sum.c;
}

cplx exact_coefficient(const SpecialQTerm& t, std::int64_t n) {
  const auto fold = folded_sequence_poly(t, n);
  const HP two_pi = 2 * boost::math::constants::pi<HP>();
  HP re = 0, im = 0;
  for (std::int64_t j = 0; j < n; ++j) {
    const auto& c = fold[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    const HP cv(c.str());
    const HP th = two_pi * j / n;
    re += cv * cos(th);
    im += cv * sin(th);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// Neville extrapolation of the points (h_i, y_i) to h = 0.
double extrapolate_to_zero(std::vector<double> h, std::vector<double> y) {
  const std::size_t m = h.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = m - 1; i >= level; --i)
      y[i] = (h[i - level] * y[i] - h[i] * y[i - 1]) / (h[i - level] - h[i]);
  return y[m - 1];
}

template <class T>
T horner(const std::vector<T>& c, const T& z) {
  T acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Aberth-Ehrlich iteration for the roots of sum c_j z^j.
std::vector<HPC> polynomial_roots(std::vector<HPC> c) {
  while (c.size() > 1 && abs(c.back()) == 0) c.pop_back();
  const std::size_t deg = c.size() - 1;
  std::vector<HPC> roots(deg);
  if (deg == 0) return roots;
  std::vector<HPC> dc(deg);
  for (std::size_t j = 1; j <= deg; ++j) dc[j - 1] = c[j] * HP(static_cast<int>(j));
  const HP r0 = pow(abs(c[0] / c[deg]), HP(1) / HP(static_cast<int>(deg)));
  const HP r = r0 > 0 ? r0 : HP(1);
  for (std::size_t k = 0; k < deg; ++k) {
    const HP th = 2 * boost::math::constants::pi<HP>() * HP(static_cast<int>(k)) / HP(static_cast<int>(deg)) + HP(0.4);
    roots[k] = HPC(r * cos(th), r * sin(th));
  }
  const HP eps = HP("1e-45");
  for (int it = 0; it < 1000; ++it) {
    HP worst = 0;
    for (std::size_t k = 0; k < deg; ++k) {
      const HPC p = horner(c, roots[k]);
      const HPC dp = horner(dc, roots[k]);
      if (abs(p) == 0) continue;
      const HPC ratio = p / dp;
      HPC s = 0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != k) s += HPC(1) / (roots[k] - roots[j]);
      const HPC step = ratio / (HPC(1) - ratio * s);
      roots[k] -= step;
      worst = std::max(worst, HP(abs(step) / std::max(HP(1), HP(abs(roots[k])))));
    }
    if (worst < eps) break;
  }
  return roots;
}

std::vector<double> least_squares(const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
  const std::size_t p = X.front().size();
  std::vector<std::vector<double>> A(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t r = 0; r < X.size(); ++r)
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) A[i][j] += X[r][i] * X[r][j];
      A[i][p] += X[r][i] * y[r];
    }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c || A[c][c] == 0.0) continue;
      const double f = A[r][c] / A[c][c];
      for (std::size_t j = c; j <= p; ++j) A[r][j] -= f * A[c][j];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t i = 0; i < p; ++i) beta[i] = A[i][p] / A[i][i];
  return beta;
}

}  // namespace

const char* to_string(SeriesMode m) noexcept { return m == SeriesMode::exact ? "exact" : "numeric"; }

cplx sequence_coefficient(const SpecialQTerm& t, std::int64_t n, SeriesMode mode) {
  if (n < 0) throw DomainError("sequence index must be nonnegative");
  if (n == 0) return {static_cast<double>(special_sequence_poly(t, 0).at_one()), 0.0};
  return mode == SeriesMode::exact ? exact_coefficient(t, n) : numeric_coefficient(t, n);
}

SeriesData sequence(const SpecialQTerm& t, std::int64_t n_max, SeriesMode mode, std::string term_id) {
  if (n_max < 1) throw DomainError("sequence requires n_max >= 1");
  t.validate();
  SeriesData s;
  s.n_max = n_max;
  s.mode = mode;
  s.term_id = std::move(term_id);
  s.coeffs.resize(static_cast<std::size_t>(n_max + 1));
  // Largest n first so the expensive items start early.
  parallel_for(s.coeffs.size(), [&](std::size_t i) {
    const auto n = n_max - static_cast<std::int64_t>(i);
    s.coeffs[static_cast<std::size_t>(n)] = sequence_coefficient(t, n, mode);
  });
  return s;
}

double crosscheck_exact_numeric(const SpecialQTerm& t, std::int64_t n) {
  const cplx a = sequence_coefficient(t, n, SeriesMode::exact);
  const cplx b = sequence_coefficient(t, n, SeriesMode::numeric);
  return std::abs(a - b) / (1.0 + std::abs(a));
}

double kashaev_41_oracle(std::int64_t n) {
  if (n < 1) throw DomainError("kashaev_41_oracle requires n >= 1");
  double sum = 0.0, prod = 1.0;  // prod = |(q)_k|^2
  for (std::int64_t k = 0; k < n; ++k) {
    sum += prod;
    const double s = 2.0 * std::sin(kPi * static_cast<double>(k + 1) / static_cast<double>(n));
    prod *= s * s;
  }
  return sum;
}

SingularityEstimate growth_rate(const SeriesData& s) {
  const std::int64_t N = s.n_max;
  if (N < 200 || static_cast<std::int64_t>(s.coeffs.size()) <= N)
    throw InsufficientDataError("growth_rate needs coefficients up to n >= 200 (window [n0, 4 n0], n0 >= 50)");
  const std::int64_t lo = N / 4;
  std::vector<double> ell(static_cast<std::size_t>(N + 1), 0.0);
  for (std::int64_t n = lo - 1; n <= N; ++n) {
    const double a = std::abs(s.coeffs[static_cast<std::size_t>(n)]);
    if (!(a > 0) || !std::isfinite(a))
      throw InsufficientDataError("coefficient c_" + std::to_string(n) + " vanishes or overflows");
    ell[static_cast<std::size_t>(n)] = std::log(a);
  }
  const auto d = [&](std::int64_t n) {
    return ell[static_cast<std::size_t>(n)] - ell[static_cast<std::size_t>(n - 1)];
  };
  SingularityEstimate est;
  const std::vector<std::int64_t> ladder = {N / 4, N / 2, N};
  std::vector<double> h, y;
  for (const auto n : ladder) {
    h.push_back(1.0 / static_cast<double>(n));
    y.push_back(d(n));
    est.diagnostics.emplace_back("d_" + std::to_string(n), d(n));
  }
  est.growth_rate = extrapolate_to_zero(h, y);
  est.diagnostics.emplace_back("richardson_linear", extrapolate_to_zero({h[1], h[2]}, {y[1], y[2]}));
  est.diagnostics.emplace_back("richardson_quadratic", est.growth_rate);

  std::vector<std::vector<double>> X;
  std::vector<double> Y;
  for (std::int64_t n = lo; n <= N; ++n) {
    const double inv = 1.0 / static_cast<double>(n);
    X.push_back({1.0, inv, inv * inv});
    Y.push_back(d(n));
  }
  est.diagnostics.emplace_back("least_squares_c", least_squares(X, Y)[0]);

  X.clear();
  Y.clear();
  for (std::int64_t n = lo; n <= N; ++n) {
    X.push_back({1.0, std::log(static_cast<double>(n))});
    Y.push_back(ell[static_cast<std::size_t>(n)] - est.growth_rate * static_cast<double>(n));
  }
  est.poly_exponent = least_squares(X, Y)[1];
  est.radius = std::exp(-est.growth_rate);
  est.diagnostics.emplace_back("poly_exponent", est.poly_exponent);
  est.diagnostics.emplace_back("radius", est.radius);
  return est;
}

PadeResult pade_analysis(const CVec& coeffs, int L, int M, double residue_threshold) {
  if (L < 0 || M < 1) throw DomainError("Pade degrees must satisfy L >= 0, M >= 1");
  if (static_cast<std::size_t>(L + M + 1) > coeffs.size())
    throw InsufficientDataError("Pade [" + std::to_string(L) + "/" + std::to_string(M) +
                                "] needs " + std::to_string(L + M + 1) + " coefficients");
  const auto c = [&](int i) { return i < 0 ? HPC(0) : HPC(coeffs[static_cast<std::size_t>(i)].real(), coeffs[static_cast<std::size_t>(i)].imag()); };

  // sum_{j=1}^M b_j c_{L+i-j} = -c_{L+i}, i = 1..M
  std::vector<std::vector<HPC>> A(static_cast<std::size_t>(M), std::vector<HPC>(static_cast<std::size_t>(M + 1)));
  HP scale = 0;
  for (int i = 1; i <= M; ++i) {
    for (int j = 1; j <= M; ++j) {
      A[i - 1][j - 1] = c(L + i - j);
      scale = std::max(scale, HP(abs(A[i - 1][j - 1])));
    }
    A[i - 1][M] = -c(L + i);
  }
  if (scale == 0) throw SingularSystemError("Pade system is identically zero");
  for (int col = 0; col < M; ++col) {
    int piv = col;
    for (int r = col + 1; r < M; ++r)
      if (abs(A[r][col]) > abs(A[piv][col])) piv = r;
    if (abs(A[piv][col]) <= scale * HP("1e-40"))
      throw SingularSystemError("Pade Toeplitz system is rank deficient at column " + std::to_string(col));
    std::swap(A[col], A[piv]);
    for (int r = col + 1; r < M; ++r) {
      const HPC f = A[r][col] / A[col][col];
      if (abs(f) == 0) continue;
      for (int j = col; j <= M; ++j) A[r][j] -= f * A[col][j];
    }
  }
  std::vector<HPC> b(static_cast<std::size_t>(M + 1));
  b[0] = 1;
  for (int i = M - 1; i >= 0; --i) {
    HPC s = A[i][M];
    for (int j = i + 1; j < M; ++j) s -= A[i][j] * b[j + 1];
    b[i + 1] = s / A[i][i];
  }
  std::vector<HPC> a(static_cast<std::size_t>(L + 1));
  for (int i = 0; i <= L; ++i)
    for (int j = 0; j <= std::min(i, M); ++j) a[i] += b[j] * c(i - j);
  std::vector<HPC> db(static_cast<std::size_t>(M));
  for (int j = 1; j <= M; ++j) db[j - 1] = b[j] * HP(j);

  PadeResult res;
  std::vector<std::pair<cplx, cplx>> pr;
  for (const auto& z : polynomial_roots(b)) {
    const HPC residue = horner(a, z) / horner(db, z);
    pr.emplace_back(cplx(static_cast<double>(z.real()), static_cast<double>(z.imag())),
                    cplx(static_cast<double>(residue.real()), static_cast<double>(residue.imag())));
  }
  std::sort(pr.begin(), pr.end(), [](const auto& x, const auto& y) { return std::abs(x.first) < std::abs(y.first); });
  double top = 0;
  for (const auto& [z, r] : pr) top = std::max(top, std::abs(r));
  for (const auto& [z, r] : pr) {
    res.poles.push_back(z);
    res.residues.push_back(r);
    if (std::abs(r) >= residue_threshold * top) res.filtered.push_back(z);
  }
  return res;
}

CVec pade_poles(const SeriesData& s, int num_degree, int den_degree) {
  return pade_analysis(s.coeffs, num_degree, den_degree).filtered;
}

ConjectureReport check_conjecture(const SpecialQTerm& t, const ConjectureConfig& cfg) {
  ConjectureReport rep;
  const QTerm q = t.as_qterm();
  try {
    rep.literal_cv = cv_set(q, cfg.solver);
    rep.diagonal_cv = cv_from_points(q, solve_variational_slice(q, cfg.solver, 0.0), 1e-8, true);
  } catch (const Error& e) {
    rep.notes.emplace_back(std::string("critical values: ") + e.what());
  }
  CVec all = rep.literal_cv.values;
  all.insert(all.end(), rep.diagonal_cv.values.begin(), rep.diagonal_cv.values.end());
  std::erase_if(all, [](cplx v) { return !(std::abs(v) > 0) || !std::isfinite(std::abs(v)); });
  if (all.empty()) {
    rep.verdict = "inconclusive";
    rep.notes.emplace_back("empty critical value set");
    return rep;
  }
  rep.min_cv_modulus = std::abs(*std::min_element(all.begin(), all.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); }));

  const auto data = sequence(t, std::max(cfg.n_max, cfg.pade_n), SeriesMode::numeric);
  SeriesData growth_data = data;
  growth_data.n_max = cfg.n_max;
  growth_data.coeffs.resize(static_cast<std::size_t>(cfg.n_max + 1));
  try {
    rep.estimate = growth_rate(growth_data);
    rep.radius_rel_error = std::abs(rep.estimate.radius - rep.min_cv_modulus) / rep.min_cv_modulus;
  } catch (const Error& e) {
    rep.notes.emplace_back(std::string("growth rate: ") + e.what());
  }
  try {
    CVec head(data.coeffs.begin(), data.coeffs.begin() + std::min<std::ptrdiff_t>(cfg.pade_n + 1, static_cast<std::ptrdiff_t>(data.coeffs.size())));
    rep.estimate.pade_poles = pade_analysis(head, cfg.pade_degree, cfg.pade_degree).filtered;
    const double disk = rep.radius_rel_error >= 0 ? rep.estimate.radius : rep.min_cv_modulus;
    for (const auto& p : rep.estimate.pade_poles) {
      if (std::abs(p) > 1.5 * disk) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : all) best = std::min(best, std::abs(p - v) / std::abs(v));
      rep.pole_distances.emplace_back(p, best);
    }
  } catch (const Error& e) {
    rep.notes.emplace_back(std::string("pade: ") + e.what());
  }
  if (rep.radius_rel_error < 0)
    rep.verdict = "inconclusive";
  else if (rep.radius_rel_error <= cfg.radius_tol)
    rep.verdict = "consistent";
  else if (rep.radius_rel_error > 5 * cfg.radius_tol)
    rep.verdict = "inconsistent";
  else
    rep.verdict = "inconclusive";
  if (!rep.pole_distances.empty() && rep.pole_distances.front().second > cfg.pole_tol)
    rep.notes.emplace_back("nearest Pade pole is not within pole_tol of a critical value");
  rep.notes.emplace_back("monodromy clause untested");
  return rep;
}

double qfactorial_asymptotics_defect(std::int64_t num, std::int64_t den, std::int64_t N) {
  if (den <= 0 || num <= 0 || num >= den) throw DomainError("alpha must lie in (0, 1)");
  if (N < 10) throw DomainError("N must be >= 10");
  const std::int64_t K = floor_div(num * N, den);
  cplx sum = 0.0;
  for (std::int64_t k = 1; k <= K; ++k) {
    const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(N);
    const double s = std::sin(0.5 * th);
    sum += principal_log(cplx(2.0 * s * s, -std::sin(th)));
  }
  const double alpha = static_cast<double>(num) / static_cast<double>(den);
  const cplx target = phi(std::exp(cplx(0.0, 2.0 * kPi * alpha))).representative;
  return std::abs(sum / static_cast<double>(N) - target);
}

double empirical_potential_defect(const QTerm& t,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& w,
                                  std::int64_t N) {
  if (w.size() != t.dim()) throw DomainError("w must have one entry per coordinate");
  if (N < 1) throw DomainError("N must be positive");
  IntVec k(t.dim());
  CVec u(t.dim());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto [p, q] = w[i];
    if (q <= 0 || p <= 0 || p >= q) throw DomainError("w entries must lie in (0, 1)");
    k[i] = floor_div(p * N, q);
    u[i] = cplx(0.0, 2.0 * kPi * static_cast<double>(p) / static_cast<double>(q));
  }
  double re_log = 0.0;
  for (std::size_t j = 0; j < t.factors.size(); ++j) {
    const auto m = t.factors[j].form(k);
    if (m < 0) throw AdmissibilityError("factor " + std::to_string(j) + " has negative index");
    if (m >= N) throw DomainError("(q)_m vanishes at q = e^{2 pi i/N} for m >= N");
    double s = 0.0;
    for (std::int64_t i = 1; i <= m; ++i)
      s += std::log(2.0 * std::abs(std::sin(kPi * static_cast<double>(i) / static_cast<double>(N))));
    re_log += t.factors[j].sign * s;
  }
  const double v = potential(t, u, t.epsilon == -1 ? 1 : 0).representative.real();
  return std::abs(re_log / static_cast<double>(N) - v);
}

double laplace_ratio_check(const QTerm& t, std::span<const cplx> z) {
  if (z.size() != t.dim()) throw DomainError("point has the wrong dimension");
  for (const auto& v : z)
    if (std::abs(v) == 0.0 || std::abs(v - 1.0) < 1e-14) throw DomainError("z_i must lie in C \\ {0, 1}");
  const cplx q = 1.0;
  double worst = 0;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    // q^{Q(k+e_i) - Q(k)} = (q^k)^{Q_i} q^{Q_ii/2 + QL_i}
    cplx r = std::pow(q, 0.5 * static_cast<double>(t.Q.matrix[i][i] + t.Q.linear_twice[i]));
    for (std::size_t m = 0; m < t.dim(); ++m) r *= std::pow(z[m], static_cast<double>(t.Q.matrix[i][m]));
    if (t.epsilon == -1 && t.L.coeffs[i] % 2 != 0) r = -r;
    for (const auto& f : t.factors) {
      const std::int64_t c = f.form.coeffs[i];
      if (c == 0) continue;
      cplx w = std::pow(q, static_cast<double>(f.form.constant));  // q^{A(k)} = z^A q^{const}
      for (std::size_t m = 0; m < t.dim(); ++m) w *= std::pow(z[m], static_cast<double>(f.form.coeffs[m]));
      // (q)_{A+c} / (q)_A
      cplx ratio = 1.0;
      if (c > 0)
        for (std::int64_t s = 1; s <= c; ++s) ratio *= 1.0 - w * std::pow(q, static_cast<double>(s));
      else
        for (std::int64_t s = 0; s < -c; ++s) ratio /= 1.0 - w * std::pow(q, -static_cast<double>(s));
      r *= f.sign > 0 ? ratio : 1.0 / ratio;
    }
    worst = std::max(worst, std::abs(r - 1.0));
  }
  return worst;
}

}  // namespace qbloch
