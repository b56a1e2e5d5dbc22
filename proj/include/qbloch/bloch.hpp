#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbloch/dilog.hpp"
#include "qbloch/qterm.hpp"
#include "qbloch/variational.hpp"

namespace qbloch {

/// Formal integer combination of points of C \ {0, 1}.
struct BlochElement {
  std::vector<std::pair<cplx, std::int64_t>> terms;

  /// Adds m [z], merging with an existing term within `tol`; drops zeros.
  void add(cplx z, std::int64_t m, double tol = 1e-12);
};

/// Formal integer combination of cover points.
struct ExtBlochElement {
  std::vector<std::pair<CHatPoint, std::int64_t>> terms;

  void add(const CHatPoint& w, std::int64_t m, double tol = 1e-12);
};

struct CVSet {
  CVec values;
  double tol = 1e-8;
};

/// sum_j eps_j [z^{A_j}]; throws NotOnVarietyError if var_residual(t, z) > tol.
BlochElement beta(const QTerm& t, std::span<const cplx> z, double tol = 1e-8);

/// [z^{-L/2}; p, 2 Log(eps)/(pi i)] - [z^{-L/2}; p, 0] + sum_j eps_j [z^{A_j}; p_{A_j}, 0].
ExtBlochElement beta_hat(const QTerm& t, const CriticalPoint& cp);

/// V(u) = Q(u)/(2 pi i) + Log(eps) Log(z^L)/(2 pi i) + sum_j eps_j Phi(z^{A_j}).
/// Throws DomainError when some z^{A_j} = 1, unless `allow_unit_factors`, in
/// which case such factors contribute Phi(1) = 0.
ModZ1Value potential(const QTerm& t, std::span<const cplx> u, int eps_branch,
                     bool allow_unit_factors = false);
inline ModZ1Value potential(const QTerm& t, const CriticalPoint& cp) {
  return potential(t, cp.u, cp.eps_branch);
}

/// {e^{-V(z)}} over the given critical points, deduplicated within tol.
CVSet cv_from_points(const QTerm& t, const std::vector<CriticalPoint>& points, double tol = 1e-8,
                     bool allow_unit_factors = false);
CVSet cv_set(const QTerm& t, const SolverConfig& cfg);

ModZ2Value rogers_of_element(const ExtBlochElement& e);
cplx bw_of_element(const BlochElement& e);

struct NuHatCertificate {
  bool ok = true;
  int failed_clause = 0;  // 1 symmetry, 2 varlog residual, 3 half-log relation, 4 parity
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Checks the hypotheses under which the image of beta_hat has vanishing nu_hat.
NuHatCertificate certify_nu_hat(const QTerm& t, const CriticalPoint& cp, double tol = 1e-8);

/// |e^{-V(z)} - e^{R(beta_hat(z)) / 2 pi i}|.
double certify_diagram(const QTerm& t, const CriticalPoint& cp);

/// Seeded random q-terms with r <= 2 and coefficients in [-3, 3].
std::vector<QTerm> random_battery(std::size_t count, std::uint64_t seed);

}  // namespace qbloch
