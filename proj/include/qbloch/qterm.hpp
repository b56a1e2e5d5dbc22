#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qbloch/laurent.hpp"

namespace qbloch {

using IntVec = std::vector<std::int64_t>;

/// Affine integral linear form  k -> constant + sum_i coeffs[i] * k_i.
///
/// The homogeneous part (coeffs) is what the variational machinery sees;
/// the constant only matters for exact evaluation and admissibility.
struct LinForm {
  IntVec coeffs;
  std::int64_t constant = 0;

  std::size_t dim() const noexcept { return coeffs.size(); }
  std::int64_t operator()(std::span<const std::int64_t> k) const;
  /// Homogeneous part at k.
  std::int64_t homogeneous(std::span<const std::int64_t> k) const;
  bool homogeneous_is_zero() const noexcept;

  friend LinForm operator-(const LinForm& a, const LinForm& b);
  friend bool operator==(const LinForm&, const LinForm&) = default;
};

/// Q(k) = 1/2 sum_ij matrix[i][j] k_i k_j + sum_i QL_i k_i, with QL stored
/// doubled (`linear_twice[i] == 2 * QL_i`) so half-integers stay exact.
struct QuadForm {
  std::vector<IntVec> matrix;
  IntVec linear_twice;

  std::size_t dim() const noexcept { return matrix.size(); }
  bool is_symmetric() const noexcept;
  /// Q_ii + 2 QL_i even for all i; makes Q(k) integral on integer k.
  bool has_integral_values() const noexcept;
  std::int64_t operator()(std::span<const std::int64_t> k) const;
  /// Row Q_i(k) = sum_j Q_ij k_j.
  std::int64_t row(std::size_t i, std::span<const std::int64_t> k) const;

  friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

struct Factor {
  LinForm form;
  int sign = 1;  // exponent of (q)_{A(k)}: +1 or -1

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// t_k(q) = q^{Q(k)} eps^{L(k)} prod_j (q)_{A_j(k)}^{eps_j}
struct QTerm {
  int r = 0;
  QuadForm Q;
  LinForm L;
  int epsilon = 1;
  std::vector<Factor> factors;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(r) + 1; }
  /// Throws SchemaError listing every violated invariant.
  void validate() const;

  friend bool operator==(const QTerm&, const QTerm&) = default;
};

/// [B choose C]_q (q)_D / (q)_E
struct QuadBlock {
  LinForm B, C, D, E;

  friend bool operator==(const QuadBlock&, const QuadBlock&) = default;
};

struct SpecialQTerm {
  int r = 0;
  QuadForm Q;
  LinForm L;
  int epsilon = 1;
  std::vector<QuadBlock> quads;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(r) + 1; }
  /// Form-shape invariants plus Newton polytope validation (nonempty, bounded).
  void validate() const;
  /// The plain q-term obtained by expanding each binomial into q-factorials.
  QTerm as_qterm() const;

  friend bool operator==(const SpecialQTerm&, const SpecialQTerm&) = default;
};

/// Exact value of a q-term as numerator / denominator.
struct QRational {
  LaurentPoly numerator;
  LaurentPoly denominator;
};

QRational eval_qterm_exact(const QTerm& t, std::span<const std::int64_t> k);
LaurentPoly eval_special_exact(const SpecialQTerm& t, std::span<const std::int64_t> k);

/// True when every block inequality holds at the affine values of k.
bool special_admissible(const SpecialQTerm& t, std::span<const std::int64_t> k);

/// Lattice points k' with (n, k') admissible, in lexicographic order.
std::vector<IntVec> newton_polytope_points(const SpecialQTerm& t, std::int64_t n);

/// a_{t,n}(q): sum of the special term over the lattice points at n.
LaurentPoly special_sequence_poly(const SpecialQTerm& t, std::int64_t n);

/// Built-in terms.
QTerm one_variable_family(std::int64_t a, std::int64_t b, int eps);
SpecialQTerm four_one_special();

}  // namespace qbloch
