#include "qbloch/qterm.hpp"

#include <algorithm>
#include <string>

#include "qbloch/errors.hpp"
#include "qbloch/polytope.hpp"

namespace qbloch {

std::int64_t LinForm::homogeneous(std::span<const std::int64_t> k) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * k[i];
  return s;
}

std::int64_t LinForm::operator()(std::span<const std::int64_t> k) const {
  return constant + homogeneous(k);
}

bool LinForm::homogeneous_is_zero() const noexcept {
  for (auto c : coeffs)
    if (c != 0) return false;
  return true;
}

LinForm operator-(const LinForm& a, const LinForm& b) {
  LinForm out{a.coeffs, a.constant - b.constant};
  for (std::size_t i = 0; i < out.coeffs.size() && i < b.coeffs.size(); ++i)
    out.coeffs[i] -= b.coeffs[i];
  return out;
}

bool QuadForm::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = 0; j < matrix.size(); ++j)
      if (matrix[i][j] != matrix[j][i]) return false;
  return true;
}

bool QuadForm::has_integral_values() const noexcept {
  for (std::size_t i = 0; i < matrix.size(); ++i)
    if ((matrix[i][i] + linear_twice[i]) % 2 != 0) return false;
  return true;
}

std::int64_t QuadForm::row(std::size_t i, std::span<const std::int64_t> k) const {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < matrix.size(); ++j) s += matrix[i][j] * k[j];
  return s;
}

std::int64_t QuadForm::operator()(std::span<const std::int64_t> k) const {
  std::int64_t twice = 0;
  for (std::size_t i = 0; i < matrix.size(); ++i) twice += k[i] * row(i, k) + linear_twice[i] * k[i];
  return twice / 2;
}

namespace {

void check_form(std::vector<SchemaIssue>& issues, const LinForm& f, std::size_t dim,
                const std::string& where) {
  if (f.coeffs.size() != dim)
    issues.push_back({where + "/coeffs", "expected " + std::to_string(dim) + " coefficients, got " +
                                             std::to_string(f.coeffs.size())});
}

void check_common(std::vector<SchemaIssue>& issues, int r, const QuadForm& Q, const LinForm& L,
                  int epsilon) {
  if (r < 0) {
    issues.push_back({"/r", "r must be nonnegative"});
    return;
  }
  const auto dim = static_cast<std::size_t>(r) + 1;
  bool square = Q.matrix.size() == dim;
  if (!square) issues.push_back({"/Q/matrix", "expected " + std::to_string(dim) + " rows"});
  for (std::size_t i = 0; i < Q.matrix.size(); ++i) {
    if (Q.matrix[i].size() != dim) {
      issues.push_back({"/Q/matrix/" + std::to_string(i), "expected " + std::to_string(dim) + " entries"});
      square = false;
    }
  }
  if (Q.linear_twice.size() != dim)
    issues.push_back({"/Q/linear", "expected " + std::to_string(dim) + " entries"});
  if (square) {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j)
        if (Q.matrix[i][j] != Q.matrix[j][i])
          issues.push_back({"/Q/matrix/" + std::to_string(i) + "/" + std::to_string(j),
                            "matrix is not symmetric"});
    if (Q.linear_twice.size() == dim) {
      for (std::size_t i = 0; i < dim; ++i)
        if ((Q.matrix[i][i] + Q.linear_twice[i]) % 2 != 0)
          issues.push_back({"/Q/linear/" + std::to_string(i),
                            "Q_ii + 2 QL_i must be even for Q(k) to be integral"});
    }
  }
  check_form(issues, L, dim, "/L");
  if (epsilon != 1 && epsilon != -1) issues.push_back({"/epsilon", "epsilon must be +1 or -1"});
}

void throw_if(std::vector<SchemaIssue> issues) {
  if (!issues.empty()) throw SchemaError(std::move(issues));
}

void check_dim(std::size_t dim, std::span<const std::int64_t> k) {
  if (k.size() != dim)
    throw DomainError("expected a point with " + std::to_string(dim) + " coordinates, got " +
                      std::to_string(k.size()));
}

int sign_power(int epsilon, std::int64_t e) { return (epsilon == -1 && e % 2 != 0) ? -1 : 1; }

}  // namespace

void QTerm::validate() const {
  std::vector<SchemaIssue> issues;
  check_common(issues, r, Q, L, epsilon);
  if (r >= 0) {
    for (std::size_t j = 0; j < factors.size(); ++j) {
      const std::string at = "/factors/" + std::to_string(j);
      check_form(issues, factors[j].form, dim(), at + "/A");
      if (factors[j].sign != 1 && factors[j].sign != -1)
        issues.push_back({at + "/sign", "sign must be +1 or -1"});
    }
  }
  throw_if(std::move(issues));
}

void SpecialQTerm::validate() const {
  std::vector<SchemaIssue> issues;
  check_common(issues, r, Q, L, epsilon);
  if (r >= 0) {
    for (std::size_t j = 0; j < quads.size(); ++j) {
      const std::string at = "/quads/" + std::to_string(j);
      check_form(issues, quads[j].B, dim(), at + "/B");
      check_form(issues, quads[j].C, dim(), at + "/C");
      check_form(issues, quads[j].D, dim(), at + "/D");
      check_form(issues, quads[j].E, dim(), at + "/E");
    }
  }
  throw_if(std::move(issues));
  validate_newton_polytope(*this);
}

QTerm SpecialQTerm::as_qterm() const {
  QTerm t{r, Q, L, epsilon, {}};
  const auto trivial = [](const LinForm& f) { return f.constant == 0 && f.homogeneous_is_zero(); };
  const auto push = [&](const LinForm& f, int sign) {
    if (!trivial(f)) t.factors.push_back({f, sign});
  };
  for (const auto& blk : quads) {
    push(blk.B, +1);
    push(blk.C, -1);
    push(blk.B - blk.C, -1);
    push(blk.D, +1);
    push(blk.E, -1);
  }
  return t;
}

QRational eval_qterm_exact(const QTerm& t, std::span<const std::int64_t> k) {
  check_dim(t.dim(), k);
  for (std::size_t j = 0; j < t.factors.size(); ++j) {
    if (t.factors[j].form(k) < 0)
      throw AdmissibilityError("factor " + std::to_string(j) + " has negative index A_j(k) = " +
                               std::to_string(t.factors[j].form(k)));
  }
  QRational out{LaurentPoly::monomial(sign_power(t.epsilon, t.L(k)), t.Q(k)),
                LaurentPoly::constant(1)};
  for (const auto& f : t.factors) {
    auto& target = f.sign > 0 ? out.numerator : out.denominator;
    target *= q_factorial(f.form(k));
  }
  return out;
}

bool special_admissible(const SpecialQTerm& t, std::span<const std::int64_t> k) {
  for (const auto& blk : t.quads) {
    const auto b = blk.B(k), c = blk.C(k), d = blk.D(k), e = blk.E(k);
    if (!(b >= c && c >= 0 && d >= e && e >= 0)) return false;
  }
  return true;
}

LaurentPoly eval_special_exact(const SpecialQTerm& t, std::span<const std::int64_t> k) {
  check_dim(t.dim(), k);
  if (!special_admissible(t, k))
    throw AdmissibilityError("point violates B >= C >= 0 or D >= E >= 0");
  auto p = LaurentPoly::monomial(sign_power(t.epsilon, t.L(k)), t.Q(k));
  for (const auto& blk : t.quads) {
    const auto b = blk.B(k), c = blk.C(k), d = blk.D(k), e = blk.E(k);
    // In place: every partial product stays a Laurent polynomial.
    for (std::int64_t i = 1; i <= std::min(c, b - c); ++i) {
      p.mul_one_minus_q_pow(std::max(c, b - c) + i);
      p.div_one_minus_q_pow(i);
    }
    for (std::int64_t j = e + 1; j <= d; ++j) p.mul_one_minus_q_pow(j);
  }
  return p;
}

std::vector<IntVec> newton_polytope_points(const SpecialQTerm& t, std::int64_t n) {
  if (n < 0) throw DomainError("newton_polytope_points requires n >= 0");
  std::vector<IntVec> out;
  IntVec k(t.dim(), 0);
  k[0] = n;
  if (t.r == 0) {
    if (special_admissible(t, k)) out.push_back({});
    return out;
  }
  auto box = integer_box(admissible_region(t, n));
  if (!box) return out;
  for (auto& [lo, hi] : *box) lo = std::max<std::int64_t>(lo, 0);
  for (const auto& [lo, hi] : *box)
    if (lo > hi) return out;

  const std::size_t r = static_cast<std::size_t>(t.r);
  for (std::size_t i = 0; i < r; ++i) k[i + 1] = (*box)[i].first;
  for (;;) {
    if (special_admissible(t, k)) out.emplace_back(k.begin() + 1, k.end());
    // Odometer, last coordinate fastest, so output is lexicographic.
    std::size_t i = r;
    while (i > 0) {
      if (k[i] < (*box)[i - 1].second) {
        ++k[i];
        break;
      }
      k[i] = (*box)[i - 1].first;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

LaurentPoly special_sequence_poly(const SpecialQTerm& t, std::int64_t n) {
  LaurentPoly sum;
  IntVec k(t.dim());
  k[0] = n;
  for (const auto& kp : newton_polytope_points(t, n)) {
    std::copy(kp.begin(), kp.end(), k.begin() + 1);
    sum += eval_special_exact(t, k);
  }
  return sum;
}

QTerm one_variable_family(std::int64_t a, std::int64_t b, int eps) {
  if (b < 0) throw DomainError("one_variable_family requires b >= 0");
  QTerm t;
  t.r = 0;
  t.Q.matrix = {{a}};
  t.Q.linear_twice = {a};
  t.L = {{1}, 0};
  t.epsilon = eps;
  for (std::int64_t j = 0; j < b; ++j) t.factors.push_back({{{1}, 0}, +1});
  t.validate();
  return t;
}

SpecialQTerm four_one_special() {
  SpecialQTerm t;
  t.r = 1;
  t.Q.matrix = {{0, -1}, {-1, 0}};
  t.Q.linear_twice = {0, 0};
  t.L = {{0, 0}, 0};
  t.epsilon = 1;
  const LinForm zero{{0, 0}, 0};
  // (q)_{n+k} / (q)_n  and  (q)_{n-1} / (q)_{n-1-k}
  t.quads.push_back({zero, zero, {{1, 1}, 0}, {{1, 0}, 0}});
  t.quads.push_back({zero, zero, {{1, 0}, -1}, {{1, -1}, -1}});
  return t;
}

}  // namespace qbloch
