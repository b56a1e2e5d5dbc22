#include <algorithm>

#include "doctest.h"
#include "qbloch/errors.hpp"
#include "qbloch/variational.hpp"

using namespace qbloch;

namespace {

bool contains(const CVec& s, cplx z, double tol = 1e-9) {
  return std::any_of(s.begin(), s.end(), [&](cplx w) { return std::abs(w - z) < tol; });
}

CVec zs(const std::vector<CriticalPoint>& pts) {
  CVec out;
  for (const auto& p : pts) out.push_back(p.z[0]);
  return out;
}

// a real point on the cut of Log(1 - z) is reported once per side
CVec distinct_zs(const std::vector<CriticalPoint>& pts, double tol) {
  CVec out;
  for (const auto& p : pts)
    if (std::none_of(out.begin(), out.end(), [&](cplx w) { return std::abs(w - p.z[0]) < tol; })) out.push_back(p.z[0]);
  return out;
}

const cplx kSixth = std::polar(1.0, kPi / 3);

}  // namespace

TEST_CASE("var_residual") {
  const auto t = one_variable_family(-1, 2, -1);
  const cplx z1[] = {kSixth};
  CHECK(var_residual(t, z1) < 1e-12);
  const cplx half[] = {0.5};
  CHECK(var_residual(one_variable_family(-1, 1, 1), half) < 1e-15);
  const cplx two[] = {2.0};
  CHECK(var_residual(t, two) > 0.1);
  const cplx one[] = {1.0};
  CHECK_THROWS_AS(var_residual(t, one), DomainError);
}

TEST_CASE("varlog_residual") {
  const auto t = one_variable_family(-1, 2, -1);
  const cplx u[] = {cplx(0, kPi / 3)};
  CHECK(std::abs(varlog_residual(t, u, 1)[0]) < 1e-12);
  const cplx u2[] = {cplx(0, -kPi / 3)};
  CHECK(std::abs(varlog_residual(t, u2, -1)[0]) < 1e-12);
  // the principal Log(-1) = pi i alone misses the conjugate point by 2 pi i
  CHECK(std::abs(std::abs(varlog_residual(t, u2)[0]) - 2 * kPi) < 1e-12);
  const cplx uh[] = {std::log(0.5)};
  CHECK(std::abs(varlog_residual(one_variable_family(-1, 1, 1), uh)[0]) < 1e-15);
  const cplx ur[] = {cplx(0.3, 0.2)};
  CHECK(std::abs(varlog_residual(t, ur, 1)[0]) > 1e-2);
}

TEST_CASE("solve_variational on one-variable families") {
  SolverConfig cfg;
  const auto p41 = solve_variational(one_variable_family(-1, 2, -1), cfg);
  REQUIRE(p41.size() == 2);
  CHECK(contains(zs(p41), kSixth));
  CHECK(contains(zs(p41), std::conj(kSixth)));
  for (const auto& p : p41) {
    CHECK(p.residual_log < cfg.newton_tol);
    CHECK(p.residual_mult < 10 * cfg.newton_tol);
    CHECK_FALSE(p.jacobian_singular);
    CHECK(std::abs(p.u[0].imag()) < kPi);
  }
  const auto half = solve_variational(one_variable_family(-1, 1, 1), cfg);
  REQUIRE(half.size() == 1);
  CHECK(std::abs(half[0].z[0] - 0.5) < 1e-12);
  const auto quad = zs(solve_variational(one_variable_family(1, 1, 1), cfg));
  CHECK(quad.size() == 2);
  CHECK(contains(quad, kSixth));
  CHECK(contains(quad, std::conj(kSixth)));
}

TEST_CASE("solve_variational is deterministic") {
  SolverConfig cfg;
  cfg.starts = 50;
  for (auto [a, b, e] : {std::tuple{-1, 2, -1}, {2, 3, 1}, {-3, 2, -1}}) {
    const auto t = one_variable_family(a, b, e);
    const auto x = solve_variational(t, cfg), y = solve_variational(t, cfg);
    REQUIRE(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].u == y[i].u);
  }
}

TEST_CASE("solve_poly_1var") {
  const auto r = solve_poly_1var(-1, 2, -1);
  CHECK(r.size() == 2);
  CHECK(contains(r, kSixth));
  CHECK(contains(r, std::conj(kSixth)));
  const auto h = solve_poly_1var(-1, 1, 1);
  REQUIRE(h.size() == 1);
  CHECK(std::abs(h[0] - 0.5) < 1e-14);
  // z^2 (1 - z) = 1: each root satisfies the cubic
  const auto c = solve_poly_1var(2, 1, 1);
  CHECK(c.size() == 3);
  for (cplx z : c) CHECK(std::abs(z * z * (1.0 - z) - 1.0) < 1e-12);
  CHECK_THROWS_AS(solve_poly_1var(0, 0, 1), DegenerateFamilyError);
}

TEST_CASE("solver agrees with the polynomial oracle on the principal strip") {
  SolverConfig cfg;
  for (int a = -3; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int eps : {1, -1}) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(eps);
        const auto solved = distinct_zs(solve_variational(one_variable_family(a, b, eps), cfg), cfg.dedup_tol);
        CVec oracle;
        for (cplx z : solve_poly_1var(a, b, eps)) {
          const cplx base = static_cast<double>(a) * principal_log(z) + static_cast<double>(b) * principal_log(1.0 - z);
          const bool ok = eps == 1 ? std::abs(base) < 1e-8
                                   : std::abs(base + cplx(0, kPi)) < 1e-8 || std::abs(base - cplx(0, kPi)) < 1e-8;
          if (ok) oracle.push_back(z);
        }
        CHECK(solved.size() == oracle.size());
        for (cplx z : oracle) CHECK(contains(solved, z, cfg.dedup_tol));
      }
}

TEST_CASE("branch_integer") {
  const cplx u1[] = {cplx(0, kPi / 3)};
  CHECK(branch_integer(u1, LinForm{{1}, 0}) == 0);
  const cplx u2[] = {cplx(0, 2 * kPi / 3), cplx(0, 2 * kPi / 3)};
  CHECK(branch_integer(u2, LinForm{{1, 1}, 0}) == 2);
  CHECK(branch_integer(u2, LinForm{{0, 0}, 5}) == 0);
  // A(u) = 3 i pi/2 wraps to -i pi/2
  const cplx u3[] = {cplx(0, kPi / 2), cplx(0, kPi / 2)};
  CHECK(branch_integer(u3, LinForm{{3, 0}, 0}) == 2);
}

TEST_CASE("half_log_point") {
  const cplx u[] = {cplx(0, kPi / 3)};
  const auto h = half_log_point(u, LinForm{{1}, 0});
  REQUIRE_FALSE(h.degenerate);
  CHECK(std::abs(h.point.z - std::polar(1.0, -kPi / 6)) < 1e-14);
  CHECK(std::abs(h.ell - cplx(0, -kPi / 6)) < 1e-14);
  const cplx v[] = {cplx(0, -kPi / 3)};
  CHECK(std::abs(half_log_point(v, LinForm{{1}, 0}).point.z - std::polar(1.0, kPi / 6)) < 1e-14);
  CHECK(half_log_point(u, LinForm{{0}, 0}).degenerate);
}

TEST_CASE("multi-variable solutions satisfy both forms of the equations") {
  QTerm t;
  t.r = 1;
  t.Q.matrix = {{2, 1}, {1, 2}};
  t.Q.linear_twice = {0, 0};
  t.L = {{0, 0}, 0};
  t.epsilon = 1;
  t.factors = {{{{1, 0}, 0}, 1}, {{{0, 1}, 0}, 1}};
  SolverConfig cfg;
  const auto pts = solve_variational(t, cfg);
  CHECK_FALSE(pts.empty());
  for (const auto& p : pts) {
    CHECK(var_residual(t, p.z) < 1e-9);
    for (const cplx r : varlog_residual(t, p.u, p.eps_branch)) CHECK(std::abs(r) < 1e-9);
    for (auto b : p.branch_A) CHECK(b % 2 == 0);
  }
}

TEST_CASE("SolverConfig validation") {
  SolverConfig cfg;
  cfg.starts = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.starts = 1;
  cfg.newton_tol = -1;
  CHECK_THROWS_AS(solve_variational(one_variable_family(-1, 2, -1), cfg), ConfigError);
}
