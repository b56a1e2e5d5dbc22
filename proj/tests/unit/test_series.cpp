#include "doctest.h"
#include "qbloch/errors.hpp"
#include "qbloch/series.hpp"

using namespace qbloch;

namespace {

SeriesData synthetic(std::int64_t n_max, const std::function<cplx(std::int64_t)>& f) {
  SeriesData s;
  s.n_max = n_max;
  for (std::int64_t n = 0; n <= n_max; ++n) s.coeffs.push_back(f(n));
  return s;
}

// The exact polynomial at zeta = e^{2 pi i/n}: exponents are reduced mod n in
// exact integers first, so only n class sums meet floating point.
cplx direct(const SpecialQTerm& t, std::int64_t n) {
  std::vector<BigInt> cls(static_cast<std::size_t>(n));
  for (const auto& [e, c] : special_sequence_poly(t, n).terms()) cls[static_cast<std::size_t>(((e % n) + n) % n)] += c;
  cplx s = 0.0;
  for (std::int64_t r = 0; r < n; ++r)
    s += cls[static_cast<std::size_t>(r)].convert_to<double>() *
         std::polar(1.0, 2 * kPi * static_cast<double>(r) / static_cast<double>(n));
  return s;
}

SpecialQTerm binomial_term() {
  // q^{k^2 - nk} (-1)^k [n choose k] (q)_{n+k}/(q)_{n}
  SpecialQTerm t;
  t.r = 1;
  t.Q.matrix = {{0, -1}, {-1, 2}};
  t.Q.linear_twice = {0, 0};
  t.L = {{0, 1}, 0};
  t.epsilon = -1;
  t.quads.push_back({{{1, 0}, 0}, {{0, 1}, 0}, {{1, 1}, 0}, {{1, 0}, 0}});
  t.validate();
  return t;
}

}  // namespace

TEST_CASE("4_1 sequence spot values") {
  const auto t = four_one_special();
  for (auto mode : {SeriesMode::exact, SeriesMode::numeric}) {
    const auto s = sequence(t, 3, mode);
    CHECK(std::abs(s.coeffs[1] - 1.0) < 1e-12);
    CHECK(std::abs(s.coeffs[2] - 5.0) < 1e-12);
    CHECK(std::abs(s.coeffs[3] - 13.0) < 1e-12);
  }
  CHECK(kashaev_41_oracle(1) == doctest::Approx(1.0));
  CHECK(kashaev_41_oracle(2) == doctest::Approx(5.0));
  CHECK(kashaev_41_oracle(3) == doctest::Approx(13.0));
  CHECK_THROWS_AS(sequence(t, 0, SeriesMode::numeric), DomainError);
}

TEST_CASE("exact and numeric modes agree for n <= 100") {
  const auto t = four_one_special();
  CHECK(crosscheck_exact_numeric(t, 2) < 1e-12);
  CHECK(crosscheck_exact_numeric(t, 20) < 1e-8);
  CHECK(crosscheck_exact_numeric(t, 50) < 1e-8);
  const auto e = sequence(t, 100, SeriesMode::exact), n = sequence(t, 100, SeriesMode::numeric);
  for (std::int64_t k = 1; k <= 100; ++k) {
    CHECK(std::abs(e.coeffs[k] - n.coeffs[k]) / (1 + std::abs(e.coeffs[k])) < 1e-8);
    CHECK(std::abs(e.coeffs[k] - kashaev_41_oracle(k)) / kashaev_41_oracle(k) < 1e-8);
  }
}

TEST_CASE("both modes match direct evaluation of the exact polynomial") {
  const auto t = binomial_term();
  for (std::int64_t n = 1; n <= 24; ++n) {
    CAPTURE(n);
    const cplx d = direct(t, n);
    CHECK(std::abs(sequence_coefficient(t, n, SeriesMode::exact) - d) < 1e-8 * (1 + std::abs(d)));
    CHECK(std::abs(sequence_coefficient(t, n, SeriesMode::numeric) - d) < 1e-8 * (1 + std::abs(d)));
  }
}

TEST_CASE("analyticity bound on the exact polynomials") {
  const auto t = four_one_special();
  for (std::int64_t n = 1; n <= 30; ++n) {
    const double norm = special_sequence_poly(t, n).norm1().convert_to<double>();
    CHECK(std::abs(sequence_coefficient(t, n, SeriesMode::exact)) <= norm * (1 + 1e-12));
  }
}

TEST_CASE("growth_rate on synthetic sequences") {
  const auto ones = growth_rate(synthetic(400, [](std::int64_t) { return cplx(1.0); }));
  CHECK(std::abs(ones.growth_rate) < 1e-10);
  CHECK(std::abs(ones.radius - 1.0) < 1e-10);
  const auto pow2 = growth_rate(synthetic(500, [](std::int64_t n) { return cplx(std::pow(2.0, static_cast<double>(n))); }));
  CHECK(std::abs(pow2.growth_rate - std::log(2.0)) < 1e-10);
  const double rho = 0.7, gamma = 1.5;
  const auto s = synthetic(500, [&](std::int64_t n) {
    return cplx(std::pow(rho, -static_cast<double>(n)) * std::pow(static_cast<double>(std::max<std::int64_t>(n, 1)), gamma));
  });
  const auto est = growth_rate(s);
  CHECK(std::abs(est.growth_rate - std::log(1 / rho)) < 1e-4);
  CHECK(std::abs(est.poly_exponent - gamma) < 1e-1);
  CHECK_FALSE(est.diagnostics.empty());
  CHECK_THROWS_AS(growth_rate(synthetic(150, [](std::int64_t) { return cplx(1.0); })), InsufficientDataError);
}

TEST_CASE("pade poles of rational series") {
  const double rho = 0.7;
  CVec geo;
  for (int n = 0; n <= 20; ++n) geo.push_back(std::pow(rho, -n));
  const auto g = pade_analysis(geo, 3, 1);
  REQUIRE(g.filtered.size() == 1);
  CHECK(std::abs(g.filtered[0] - rho) < 1e-8);

  const cplx p1(0.8, 0.3), p2(-1.1, 0.2);
  CVec two;
  for (int n = 0; n <= 30; ++n) two.push_back(2.0 / std::pow(p1, n + 1) - 0.5 / std::pow(p2, n + 1));
  const auto r = pade_analysis(two, 5, 2);
  REQUIRE(r.filtered.size() == 2);
  CHECK(std::abs(r.filtered[0] - p1) < 1e-6);
  CHECK(std::abs(r.filtered[1] - p2) < 1e-6);

  CVec exact_geo;  // powers of two are exact, so the [3/4] system is exactly rank one
  for (int n = 0; n <= 20; ++n) exact_geo.push_back(std::ldexp(1.0, n));
  CHECK_THROWS_AS(pade_analysis(exact_geo, 3, 4), SingularSystemError);
  CHECK_THROWS_AS(pade_analysis(geo, 15, 15), InsufficientDataError);
}

TEST_CASE("conjecture check") {
  const auto t = four_one_special();
  ConjectureConfig cfg;
  const auto rep = check_conjecture(t, cfg);
  CHECK(rep.verdict == "consistent");
  CHECK(rep.radius_rel_error < 0.03);
  CHECK(std::abs(rep.min_cv_modulus - 0.7239261119) < 1e-9);
  CHECK(std::any_of(rep.notes.begin(), rep.notes.end(), [](const std::string& s) { return s.find("monodromy") != std::string::npos; }));
  cfg.n_max = 50;
  CHECK(check_conjecture(t, cfg).verdict == "inconclusive");
}

TEST_CASE("q-factorial asymptotics") {
  CHECK(qfactorial_asymptotics_defect(1, 3, 2000) < qfactorial_asymptotics_defect(1, 3, 1000));
  CHECK(qfactorial_asymptotics_defect(1, 2, 4000) < 5e-3);
  for (auto [p, q] : {std::pair{1, 6}, {1, 4}, {1, 3}, {1, 2}, {2, 3}}) CHECK(std::isfinite(qfactorial_asymptotics_defect(p, q, 500)));
  CHECK_THROWS_AS(qfactorial_asymptotics_defect(3, 2, 100), DomainError);
}

TEST_CASE("empirical potential") {
  const auto t = one_variable_family(-1, 2, -1);
  const std::vector<std::pair<std::int64_t, std::int64_t>> third = {{1, 3}}, sixth = {{1, 6}};
  CHECK(empirical_potential_defect(t, third, 2000) < 1e-2);
  CHECK(empirical_potential_defect(t, third, 2000) < empirical_potential_defect(t, third, 1000));
  double prev = INFINITY;
  for (std::int64_t N : {500, 1000, 2000, 4000}) {
    const double d = empirical_potential_defect(t, sixth, N);
    CHECK(d < prev);
    prev = d;
  }
  QTerm zero;
  zero.r = 0;
  zero.Q.matrix = {{0}};
  zero.Q.linear_twice = {0};
  zero.L = {{0}, 0};
  CHECK(empirical_potential_defect(zero, third, 1000) < 1e-14);
}

TEST_CASE("Laplace ratio check") {
  const auto t = one_variable_family(-1, 2, -1);
  const cplx z[] = {std::polar(1.0, kPi / 3)};
  CHECK(laplace_ratio_check(t, z) < 1e-10);
  const cplx w[] = {cplx(0.3, 0.4)};
  CHECK(laplace_ratio_check(t, w) > 1e-2);
}
