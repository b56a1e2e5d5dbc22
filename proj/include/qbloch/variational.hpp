#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qbloch/dilog.hpp"
#include "qbloch/qterm.hpp"

namespace qbloch {

using CVec = std::vector<cplx>;

struct SolverConfig {
  int starts = 200;
  std::uint64_t seed = 7;
  double newton_tol = 1e-10;
  int max_iter = 100;
  double dedup_tol = 1e-6;
  bool strip = true;  // keep only Im u_i in (-pi, pi]

  /// Throws ConfigError on nonpositive tolerances or starts < 1.
  void validate() const;
};

/// A solution of the logarithmic variational equations.
///
/// `eps_branch` fixes the determination Log(eps) = eps_branch * pi i used for
/// this point: 0 when eps = +1, +-1 when eps = -1.
struct CriticalPoint {
  CVec u;
  CVec z;
  double residual_log = 0;
  double residual_mult = 0;
  IntVec branch_A;  // p_{z,A_j}, one per factor (0 for constant factors)
  std::int64_t branch_L = 0;
  bool jacobian_singular = false;
  int eps_branch = 0;

  cplx log_eps() const { return {0.0, kPi * eps_branch}; }
};

/// max_i |z^{Q_i} eps^{v_i(L)} prod_j (1 - z^{A_j})^{v_i(eps_j A_j)} - 1|.
/// Throws DomainError if some z_i or z^{A_j} lies in {0, 1}.
double var_residual(const QTerm& t, std::span<const cplx> z);

/// Component i: sum_j eps_j v_i(A_j) Log(1 - e^{A_j(u)}) + sum_m Q_im u_m
/// + Log(eps) v_i(L). Without `eps_branch` the principal Log(eps) is used.
CVec varlog_residual(const QTerm& t, std::span<const cplx> u,
                     std::optional<int> eps_branch = std::nullopt);

/// Multistart damped Newton on the logarithmic variational equations.
/// Deterministic in (t, cfg); empty when nothing converges.
std::vector<CriticalPoint> solve_variational(const QTerm& t, const SolverConfig& cfg);

/// Same system with u_0 held fixed and only the equations i >= 1 imposed.
/// With u0 = 0 this is the slice z_0 = 1 on which the diagonal series lives.
std::vector<CriticalPoint> solve_variational_slice(const QTerm& t, const SolverConfig& cfg,
                                                   cplx u0 = 0.0);

/// Roots in C \ {0, 1} of z^a (1 - z)^b eps = 1 after clearing denominators.
/// Throws DegenerateFamilyError for (a, b) = (0, 0).
CVec solve_poly_1var(std::int64_t a, std::int64_t b, int eps);

/// p_{z,A} = (sum_i v_i(A) u_i - Log e^{A(u)}) / (pi i). Throws
/// BranchParityError when the nearest integer is odd or not close.
std::int64_t branch_integer(std::span<const cplx> u, const LinForm& A);

/// z^{-L/2}: log value ell = -Log(z^L) + 1/2 sum_i v_i(L) u_i and the cover
/// point (e^ell; p_ell, 0) whose log equals ell.
struct HalfLog {
  cplx ell;
  CHatPoint point;
  bool degenerate = false;  // L has zero homogeneous part; e^ell = 1 is not a cover point
};

HalfLog half_log_point(std::span<const cplx> u, const LinForm& L);

}  // namespace qbloch
