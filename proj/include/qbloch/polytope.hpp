#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "qbloch/qterm.hpp"

namespace qbloch {

using Rational = boost::multiprecision::mpq_rational;
using RatVec = std::vector<Rational>;

namespace lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rational value;
  RatVec point;
};

/// Exact two-phase simplex (Bland's rule): maximize c.x subject to A x <= b
/// with x free.
Result maximize(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c);

}  // namespace lp

/// {w : A w <= b} in R^r.
struct HalfSpaces {
  std::vector<RatVec> A;
  RatVec b;
  std::size_t dim = 0;
};

/// The Newton polytope P_t: block inequalities at (1, w), homogeneous parts only.
HalfSpaces newton_polytope(const SpecialQTerm& t);

/// Admissible region at fixed n: block inequalities at (n, k') with constants.
HalfSpaces admissible_region(const SpecialQTerm& t, std::int64_t n);

/// Integer bounding box of a polytope, or nullopt when it is empty.
/// Throws PolytopeError if some coordinate is unbounded.
std::optional<std::vector<std::pair<std::int64_t, std::int64_t>>> integer_box(
    const HalfSpaces& h);

/// Throws PolytopeError unless P_t is nonempty and bounded.
void validate_newton_polytope(const SpecialQTerm& t);

}  // namespace qbloch
