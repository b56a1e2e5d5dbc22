#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qbloch/bloch.hpp"
#include "qbloch/qterm.hpp"
#include "qbloch/variational.hpp"

namespace qbloch {

enum class SeriesMode { exact, numeric };

const char* to_string(SeriesMode m) noexcept;

/// c_n = a_{t,n}(e^{2 pi i / n}) for n = 0..n_max; c_0 is a_{t,0}(1).
struct SeriesData {
  std::int64_t n_max = 0;
  CVec coeffs;
  SeriesMode mode = SeriesMode::numeric;
  std::string term_id;
};

/// Exact mode sums eval_special_exact and evaluates the polynomial at the
/// root of unity in 50-digit arithmetic. Numeric mode evaluates every factor
/// at the root directly; (q)_D/(q)_E is exactly zero iff n divides some j in
/// (E, D], and binomials go through the q-Lucas factorization.
SeriesData sequence(const SpecialQTerm& t, std::int64_t n_max, SeriesMode mode,
                    std::string term_id = {});

/// Single coefficient c_n.
cplx sequence_coefficient(const SpecialQTerm& t, std::int64_t n, SeriesMode mode);

/// |c_exact - c_numeric| / (1 + |c_exact|).
double crosscheck_exact_numeric(const SpecialQTerm& t, std::int64_t n);

/// sum_{k=0}^{n-1} |(q)_k|^2 at q = e^{2 pi i / n}.
double kashaev_41_oracle(std::int64_t n);

struct SingularityEstimate {
  double growth_rate = 0;    // c with |c_n| ~ e^{c n} n^gamma
  double radius = 1;         // e^{-c}
  double poly_exponent = 0;  // gamma
  CVec pade_poles;
  std::vector<std::pair<std::string, double>> diagnostics;
};

/// Richardson (Neville) extrapolation in 1/n of d_n = log|c_n| - log|c_{n-1}|
/// on the ladder n_max/4, n_max/2, n_max; gamma by least squares of
/// log|c_n| - c n against log n. Throws InsufficientDataError for n_max < 200
/// or vanishing coefficients in the window.
SingularityEstimate growth_rate(const SeriesData& s);

struct PadeResult {
  CVec poles;       // all roots of the denominator, by modulus
  CVec residues;    // matching residues
  CVec filtered;    // poles with |residue| >= threshold * max |residue|, by modulus
};

/// [L/M] Pade approximant of sum c_n z^n solved in 50-digit arithmetic.
/// Throws InsufficientDataError when L + M + 1 exceeds the data and
/// SingularSystemError when the Toeplitz system is rank deficient.
PadeResult pade_analysis(const CVec& coeffs, int num_degree, int den_degree,
                         double residue_threshold = 1e-8);
CVec pade_poles(const SeriesData& s, int num_degree, int den_degree);

struct ConjectureConfig {
  SolverConfig solver;
  std::int64_t n_max = 1000;
  std::int64_t pade_n = 120;
  int pade_degree = 40;
  double radius_tol = 0.03;
  double pole_tol = 0.05;
};

struct ConjectureReport {
  CVSet literal_cv;    // critical values of the associated q-term
  CVSet diagonal_cv;   // critical values on the slice z_0 = 1
  SingularityEstimate estimate;
  double min_cv_modulus = 0;
  double radius_rel_error = -1;  // (i); negative when not computed
  std::vector<std::pair<cplx, double>> pole_distances;  // (ii) near-disk pole, distance
  std::string verdict;  // consistent / inconsistent / inconclusive
  std::vector<std::string> notes;
};

ConjectureReport check_conjecture(const SpecialQTerm& t, const ConjectureConfig& cfg);

/// |(1/N) sum_{k=1}^{floor(alpha N)} Log(1 - e^{2 pi i k/N}) - Phi(e^{2 pi i alpha})|
/// for alpha = num/den in (0, 1).
double qfactorial_asymptotics_defect(std::int64_t num, std::int64_t den, std::int64_t N);

/// |Re (1/N) log t_{floor(w N)}(e^{2 pi i/N}) - Re V(e^{2 pi i w})|, w given as
/// (num, den) pairs, one per coordinate.
double empirical_potential_defect(const QTerm& t,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& w,
                                  std::int64_t N);

/// max_i |R_i - 1| where R_i is the term ratio t_{k+e_i}/t_k written through
/// z = q^k and taken at q = 1.
double laplace_ratio_check(const QTerm& t, std::span<const cplx> z);

}  // namespace qbloch
