#include "qbloch/polytope.hpp"

#include <string>

#include "qbloch/errors.hpp"

namespace qbloch {

namespace lp {
namespace {

// Dense tableau; column `cols` holds the right-hand side.
struct Tableau {
  std::vector<RatVec> rows;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j <= cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  // Maximizes cost.x over the current basic feasible solution. Columns with
  // `allowed[j] == false` never enter. Returns false when unbounded.
  bool optimize(const RatVec& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < cols && !enter; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = -cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i) reduced += cost[basis[i]] * rows[i][j];
        if (reduced < 0) enter = j;
      }
      if (!enter) return true;
      const std::size_t c = *enter;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][c] <= 0) continue;
        const Rational ratio = rows[i][cols] / rows[i][c];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, c);
    }
  }

  Rational value_of(std::size_t var) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (basis[i] == var) return rows[i][cols];
    return Rational(0);
  }
};

}  // namespace

Result maximize(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  // Columns: x+ (n), x- (n), slack (m), artificial (m).
  const std::size_t n_struct = 2 * n + m;
  Tableau t;
  t.cols = n_struct + m;
  t.rows.assign(m, RatVec(t.cols + 1, Rational(0)));
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int s = b[i] < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      t.rows[i][j] = s * A[i][j];
      t.rows[i][n + j] = -s * A[i][j];
    }
    t.rows[i][2 * n + i] = s;
    t.rows[i][n_struct + i] = 1;
    t.rows[i][t.cols] = s * b[i];
    t.basis[i] = n_struct + i;
  }

  Result res;
  RatVec phase1(t.cols, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n_struct + i] = -1;
  std::vector<bool> allowed(t.cols, true);
  t.optimize(phase1, allowed);
  Rational infeas = 0;
  for (std::size_t i = 0; i < m; ++i) infeas += t.value_of(n_struct + i);
  if (infeas != 0) {
    res.status = Status::infeasible;
    return res;
  }
  // Drive artificial variables out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < n_struct) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n_struct && !col; ++j)
      if (t.rows[i][j] != 0) col = j;
    if (col) {
      t.pivot(i, *col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  for (std::size_t j = n_struct; j < t.cols; ++j) allowed[j] = false;

  RatVec phase2(t.cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = c[j];
    phase2[n + j] = -c[j];
  }
  if (!t.optimize(phase2, allowed)) {
    res.status = Status::unbounded;
    return res;
  }
  res.status = Status::optimal;
  res.point.resize(n);
  res.value = 0;
  for (std::size_t j = 0; j < n; ++j) {
    res.point[j] = t.value_of(j) - t.value_of(n + j);
    res.value += c[j] * res.point[j];
  }
  return res;
}

}  // namespace lp

namespace {

// Appends the constraint  form(k0, w) >= 0  as a row of A w <= b.
void add_nonneg(HalfSpaces& h, const LinForm& f, std::int64_t k0, bool with_constant) {
  RatVec row(h.dim);
  for (std::size_t i = 0; i < h.dim; ++i) row[i] = -f.coeffs[i + 1];
  Rational rhs = Rational(f.coeffs[0]) * k0;
  if (with_constant) rhs += f.constant;
  h.A.push_back(std::move(row));
  h.b.push_back(rhs);
}

HalfSpaces block_constraints(const SpecialQTerm& t, std::int64_t k0, bool with_constant) {
  HalfSpaces h;
  h.dim = static_cast<std::size_t>(t.r);
  for (const auto& blk : t.quads) {
    add_nonneg(h, blk.B - blk.C, k0, with_constant);
    add_nonneg(h, blk.C, k0, with_constant);
    add_nonneg(h, blk.D - blk.E, k0, with_constant);
    add_nonneg(h, blk.E, k0, with_constant);
  }
  return h;
}

std::int64_t floor_rat(const Rational& x) {
  BigInt q = numerator(x) / denominator(x);  // truncates toward zero
  if (x < 0 && Rational(q) != x) q -= 1;
  return q.convert_to<std::int64_t>();
}

std::int64_t ceil_rat(const Rational& x) { return -floor_rat(-x); }

}  // namespace

HalfSpaces newton_polytope(const SpecialQTerm& t) { return block_constraints(t, 1, false); }

HalfSpaces admissible_region(const SpecialQTerm& t, std::int64_t n) {
  return block_constraints(t, n, true);
}

std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> integer_box(
    const HalfSpaces& h) {
  std::vector<std::pair<std::int64_t, std::int64_t>> box(h.dim);
  for (std::size_t i = 0; i < h.dim; ++i) {
    RatVec c(h.dim, Rational(0));
    c[i] = 1;
    const auto hi = lp::maximize(h.A, h.b, c);
    if (hi.status == lp::Status::infeasible) return std::nullopt;
    if (hi.status == lp::Status::unbounded)
      throw PolytopeError("polytope is unbounded in coordinate " + std::to_string(i + 1));
    c[i] = -1;
    const auto lo = lp::maximize(h.A, h.b, c);
    if (lo.status == lp::Status::unbounded)
      throw PolytopeError("polytope is unbounded in coordinate " + std::to_string(i + 1));
    box[i] = {ceil_rat(-lo.value), floor_rat(hi.value)};
  }
  return box;
}

void validate_newton_polytope(const SpecialQTerm& t) {
  const auto h = newton_polytope(t);
  if (h.dim == 0) {
    // P_t is a point (R^0); it is nonempty iff the constant inequalities hold.
    for (const auto& v : h.b)
      if (v < 0) throw PolytopeError("Newton polytope is empty");
    return;
  }
  if (!integer_box(h)) throw PolytopeError("Newton polytope is empty");
}

}  // namespace qbloch
