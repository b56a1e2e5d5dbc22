#include <random>

#include "doctest.h"
#include "qbloch/errors.hpp"
#include "qbloch/laurent.hpp"
#include "qbloch/polytope.hpp"
#include "qbloch/qterm.hpp"

using namespace qbloch;

namespace {

LaurentPoly poly(std::vector<std::pair<std::int64_t, int>> t) {
  std::vector<std::pair<LaurentPoly::Exponent, BigInt>> v;
  for (auto [e, c] : t) v.emplace_back(e, BigInt(c));
  return LaurentPoly::from_terms(v);
}

BigInt binomial(int n, int m) {
  BigInt r = 1;
  for (int i = 1; i <= m; ++i) r = r * (n - m + i) / i;
  return r;
}

SpecialQTerm one_block(LinForm B, LinForm C, LinForm D, LinForm E) {
  SpecialQTerm t;
  t.r = 1;
  t.Q.matrix = {{0, 0}, {0, 0}};
  t.Q.linear_twice = {0, 0};
  t.L = {{0, 0}, 0};
  t.quads.push_back({B, C, D, E});
  return t;
}

}  // namespace

TEST_CASE("q_factorial expansions") {
  CHECK(q_factorial(0) == LaurentPoly::constant(1));
  CHECK(q_factorial(2) == poly({{0, 1}, {1, -1}, {2, -1}, {3, 1}}));
  CHECK(q_factorial(3) == poly({{0, 1}, {1, -1}, {2, -1}, {4, 1}, {5, 1}, {6, -1}}));
  for (int n = 0; n <= 12; ++n) CHECK(q_factorial(n).max_exponent() == (n == 0 ? 0 : n * (n + 1) / 2));
}

TEST_CASE("q_binomial") {
  CHECK(q_binomial(4, 0) == LaurentPoly::constant(1));
  CHECK(q_binomial(4, 2) == poly({{0, 1}, {1, 1}, {2, 2}, {3, 1}, {4, 1}}));
  CHECK(norm1(q_binomial(6, 3)) == 20);
  CHECK_THROWS_AS(q_binomial(3, 4), DomainError);
  CHECK_THROWS_AS(q_binomial(3, -1), DomainError);
}

TEST_CASE("q_binomial norms and factorial identity for n <= 20") {
  for (int n = 0; n <= 20; ++n)
    for (int m = 0; m <= n; ++m) {
      const auto b = q_binomial(n, m);
      for (const auto& [e, c] : b.terms()) CHECK(c > 0);
      CHECK(norm1(b) == binomial(n, m));
      CHECK(b * q_factorial(m) * q_factorial(n - m) == q_factorial(n));
    }
}

TEST_CASE("norm1") {
  CHECK(norm1(LaurentPoly::constant(1)) == 1);
  CHECK(norm1(q_factorial(3)) == 6);
  CHECK(norm1(q_binomial(4, 2)) == 6);
}

TEST_CASE("norm1 is submultiplicative") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-9, 9), expo(-6, 6), len(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    LaurentPoly a, b;
    for (int i = len(rng); i > 0; --i) a += LaurentPoly::monomial(coef(rng), expo(rng));
    for (int i = len(rng); i > 0; --i) b += LaurentPoly::monomial(coef(rng), expo(rng));
    CHECK(norm1(a * b) <= norm1(a) * norm1(b));
  }
}

TEST_CASE("Laurent arithmetic keeps no zero coefficients") {
  auto p = poly({{-2, 3}, {1, -1}});
  p -= poly({{-2, 3}});
  CHECK(p == LaurentPoly::monomial(-1, 1));
  p -= p;
  CHECK(p.is_zero());
  auto f = q_factorial(5);
  f.div_one_minus_q_pow(5);
  CHECK(f == q_factorial(4));
  auto g = q_factorial(3);
  CHECK_THROWS_AS(g.div_one_minus_q_pow(5), DomainError);
}

TEST_CASE("eval_qterm_exact") {
  const auto t = one_variable_family(-1, 2, -1);
  const std::int64_t k1[] = {1};
  const auto v = eval_qterm_exact(t, k1);
  CHECK(v.numerator == LaurentPoly::monomial(-1, -1) * q_factorial(1) * q_factorial(1));
  CHECK(v.denominator == LaurentPoly::constant(1));

  const std::int64_t k0[] = {0};
  const auto one = eval_qterm_exact(t, k0);
  CHECK(one.numerator == LaurentPoly::constant(1));
  CHECK(one.denominator == LaurentPoly::constant(1));

  const auto s = one_variable_family(1, 1, 1);
  const std::int64_t k2[] = {2};
  CHECK(eval_qterm_exact(s, k2).numerator == LaurentPoly::monomial(1, 3) * q_factorial(2));

  QTerm neg = t;
  neg.factors.push_back({{{1}, -3}, -1});
  CHECK_THROWS_AS(eval_qterm_exact(neg, k1), AdmissibilityError);
  CHECK(eval_qterm_exact(neg, std::vector<std::int64_t>{4}).denominator == q_factorial(1));
}

TEST_CASE("eval_special_exact on the 4_1 term") {
  const auto t = four_one_special();
  CHECK(eval_special_exact(t, std::vector<std::int64_t>{2, 0}) == LaurentPoly::constant(1));
  CHECK(eval_special_exact(t, std::vector<std::int64_t>{2, 1}) ==
        LaurentPoly::monomial(1, -2) * q_factorial_ratio(1, 0) * q_factorial_ratio(3, 2));
  // sum over k at n = 2, evaluated at q = -1
  BigInt at_minus_one = 0;
  for (const auto& [e, c] : special_sequence_poly(t, 2).terms()) at_minus_one += (e % 2 == 0) ? c : BigInt(-c);
  CHECK(at_minus_one == 5);
  CHECK_THROWS_AS(eval_special_exact(t, std::vector<std::int64_t>{2, 2}), AdmissibilityError);
}

TEST_CASE("binomial blocks expand into factorial factors") {
  // [n choose k] (q)_n / (q)_0 with 0 <= k <= n
  auto t = one_block({{1, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 0}, {{0, 0}, 0});
  t.validate();
  const auto plain = t.as_qterm();
  for (std::int64_t n = 0; n <= 5; ++n)
    for (std::int64_t k = 0; k <= n; ++k) {
      const std::int64_t pt[] = {n, k};
      const auto special = eval_special_exact(t, pt);
      const auto expanded = eval_qterm_exact(plain, pt);
      CHECK(special * expanded.denominator == expanded.numerator);
    }
}

TEST_CASE("newton_polytope_points") {
  const auto t = four_one_special();
  CHECK(newton_polytope_points(t, 3) == std::vector<IntVec>{{0}, {1}, {2}});
  CHECK(newton_polytope_points(t, 1) == std::vector<IntVec>{{0}});
  CHECK(newton_polytope_points(t, 0).empty());
  for (std::int64_t n = 0; n <= 30; ++n) CHECK(newton_polytope_points(t, n).size() <= static_cast<std::size_t>(n + 1));

  // r = 2: 0 <= k1 <= k2 <= n, i.e. [n choose k2][k2 choose k1]
  SpecialQTerm two;
  two.r = 2;
  two.Q.matrix = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  two.Q.linear_twice = {0, 0, 0};
  two.L = {{0, 0, 0}, 0};
  two.quads.push_back({{{1, 0, 0}, 0}, {{0, 0, 1}, 0}, {{0, 0, 0}, 0}, {{0, 0, 0}, 0}});
  two.quads.push_back({{{0, 0, 1}, 0}, {{0, 1, 0}, 0}, {{0, 0, 0}, 0}, {{0, 0, 0}, 0}});
  two.validate();
  for (std::int64_t n = 0; n <= 6; ++n) {
    const auto pts = newton_polytope_points(two, n);
    CHECK(pts.size() == static_cast<std::size_t>((n + 1) * (n + 2) / 2));
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    // q = 1 value of sum_k [n,k2][k2,k1] is 3^n
    CHECK(special_sequence_poly(two, n).at_one() == boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(n)));
  }
}

TEST_CASE("polytope validation") {
  // k >= 0 only: unbounded
  auto unbounded = one_block({{0, 0}, 0}, {{0, 0}, 0}, {{0, 1}, 0}, {{0, 0}, 0});
  CHECK_THROWS_AS(unbounded.validate(), PolytopeError);
  // D = -n < E = 0: empty
  auto empty = one_block({{0, 0}, 0}, {{0, 0}, 0}, {{-1, 0}, 0}, {{0, 0}, 0});
  CHECK_THROWS_AS(empty.validate(), PolytopeError);
  CHECK_NOTHROW(four_one_special().validate());
}

TEST_CASE("schema invariants collect every issue") {
  QTerm t = one_variable_family(-1, 2, -1);
  t.Q.linear_twice = {0};  // Q_00 + 2 QL_0 = -1 is odd
  t.epsilon = 3;
  t.factors[1].form.coeffs = {1, 2};
  try {
    t.validate();
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    std::vector<std::string> ptrs;
    for (const auto& i : e.issues()) ptrs.push_back(i.pointer);
    CHECK(ptrs == std::vector<std::string>{"/Q/linear/0", "/epsilon", "/factors/1/A/coeffs"});
  }
  QTerm asym;
  asym.r = 1;
  asym.Q.matrix = {{0, 1}, {2, 0}};
  asym.Q.linear_twice = {0, 0};
  asym.L = {{0, 0}, 0};
  CHECK_THROWS_AS(asym.validate(), SchemaError);
}

TEST_CASE("QuadForm evaluation with half-integer linear part") {
  const auto t = one_variable_family(-1, 2, -1);
  for (std::int64_t n = 0; n < 10; ++n) {
    const std::int64_t k[] = {n};
    CHECK(t.Q(k) == -n * (n + 1) / 2);
  }
}
