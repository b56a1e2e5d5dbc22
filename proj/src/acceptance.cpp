#include "qbloch/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qbloch/bloch.hpp"
#include "qbloch/errors.hpp"
#include "qbloch/io.hpp"
#include "qbloch/series.hpp"

namespace qbloch {

namespace {

constexpr double kRegulator = 2.0298832128193074;
constexpr double kCvSmall = 0.7239261119;
constexpr double kCvLarge = 1.3813564445;

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << "[" << why << "] ";
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

QTerm load_plain(const AcceptanceOptions& o, const std::string& name, const QTerm& fallback) {
  const auto path = o.data_dir / name;
  if (!std::filesystem::exists(path)) return fallback;
  return as_plain(parse_qterm(path));
}

SpecialQTerm load_special(const AcceptanceOptions& o) {
  const auto path = o.data_dir / "four_one_special.json";
  if (!std::filesystem::exists(path)) return four_one_special();
  auto t = parse_qterm(path);
  if (const auto* s = std::get_if<SpecialQTerm>(&t)) return *s;
  throw SchemaError(std::vector<SchemaIssue>{{"", "four_one_special.json is not a special q-term"}});
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct BatteryRun {
  std::vector<QTerm> terms;
  std::vector<std::vector<CriticalPoint>> points;
  double seconds = 0;
};

// State shared across criteria so expensive solves run once.
struct Context {
  const AcceptanceOptions& opts;
  QTerm four_one;
  std::vector<CriticalPoint> four_one_points;
  SpecialQTerm special;
  std::optional<BatteryRun> battery;
  std::optional<SeriesData> series;

  const BatteryRun& run_battery() {
    if (!battery) {
      const auto t0 = std::chrono::steady_clock::now();
      BatteryRun b;
      b.terms = load_battery(opts);
      for (const auto& t : b.terms) b.points.push_back(solve_variational(t, opts.solver));
      b.seconds = seconds_since(t0);
      battery = std::move(b);
    }
    return *battery;
  }

  const SeriesData& numeric_series() {
    if (!series) series = sequence(special, 1000, SeriesMode::numeric, "four_one_special");
    return *series;
  }
};

void criterion_solutions(Context& c, Check& k) {
  const auto t0 = std::chrono::steady_clock::now();
  c.four_one_points = solve_variational(c.four_one, c.opts.solver);
  const double secs = seconds_since(t0);
  const auto& pts = c.four_one_points;
  k.require(pts.size() == 2, "expected 2 points, got " + std::to_string(pts.size()));
  bool up = false, down = false;
  double worst = 0;
  for (const auto& p : pts) {
    const cplx z = p.z[0];
    worst = std::max({worst, p.residual_log, p.residual_mult});
    up |= std::abs(z - std::polar(1.0, kPi / 3)) < 1e-9;
    down |= std::abs(z - std::polar(1.0, -kPi / 3)) < 1e-9;
  }
  k.require(up && down, "points are not {e^{i pi/3}, e^{-i pi/3}}");
  k.require(worst < 1e-10, "residual " + fmt(worst));
  k.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  k.detail << pts.size() << " points, max residual " << fmt(worst) << ", solve " << fmt(secs) << " s";
}

void criterion_regulator(Context& c, Check& k) {
  if (c.four_one_points.empty()) c.four_one_points = solve_variational(c.four_one, c.opts.solver);
  bool plus = false, minus = false;
  k.require(!c.four_one_points.empty(), "no critical points");
  for (const auto& p : c.four_one_points) {
    const auto R = rogers_of_element(beta_hat(c.four_one, p));
    const double dp = R.distance(ModZ2Value{cplx(0, kRegulator)});
    const double dm = R.distance(ModZ2Value{cplx(0, -kRegulator)});
    plus |= dp < 1e-9;
    minus |= dm < 1e-9;
    k.require(std::min(dp, dm) < 1e-9, "R^ off by " + fmt(std::min(dp, dm)));
    k.detail << "R^ = " << R.canonical().real() << (R.canonical().imag() < 0 ? " - " : " + ") << std::abs(R.canonical().imag())
             << "i; ";
  }
  k.require(plus && minus, "both signs of Im R^ expected");
}

void criterion_cv(Context& c, Check& k) {
  const auto cv = cv_set(c.four_one, c.opts.solver);
  auto vals = cv.values;
  std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  k.require(vals.size() == 2, "expected 2 values, got " + std::to_string(vals.size()));
  if (vals.size() == 2) {
    const double d0 = std::abs(vals[0] - kCvSmall), d1 = std::abs(vals[1] - kCvLarge);
    const double prod = std::abs(vals[0] * vals[1] - 1.0);
    k.require(d0 < 1e-9 && d1 < 1e-9, "values off by " + fmt(std::max(d0, d1)));
    k.require(prod < 1e-9, "product off by " + fmt(prod));
    k.detail.precision(12);
    k.detail << "CV = {" << vals[0].real() << ", " << vals[1].real() << "}, |product - 1| = " << fmt(prod);
  }
}

void criterion_diagram(Context& c, Check& k) {
  const auto& b = c.run_battery();
  std::size_t n = 0, bad = 0;
  double worst = 0;
  for (std::size_t i = 0; i < b.terms.size(); ++i) {
    for (const auto& p : b.points[i]) {
      const double d = certify_diagram(b.terms[i], p);
      worst = std::max(worst, d);
      ++n;
      bad += !(d < 1e-8);
    }
  }
  const double secs = b.seconds;
  k.require(b.terms.size() >= 50, "battery has only " + std::to_string(b.terms.size()) + " terms");
  k.require(n > 0, "no accepted points");
  k.require(bad == 0, std::to_string(bad) + " points above 1e-8");
  k.require(secs < 60.0, "runtime " + fmt(secs) + " s");
  k.detail << b.terms.size() << " terms, " << n << " points, worst |e^-V - e^(R/2pi i)| = " << fmt(worst)
           << ", solve " << fmt(secs) << " s";
}

void criterion_five_term(Context& c, Check& k) {
  std::mt19937_64 rng(c.opts.seed);
  std::uniform_real_distribution<double> box(-3.0, 3.0), unit(0.0, 1.0);
  double worst_d2 = 0;
  int pairs = 0;
  while (pairs < 1000) {
    const cplx x(box(rng), box(rng)), y(box(rng), box(rng));
    const auto far = [](cplx v) { return std::abs(v) > 1e-3 && std::abs(v - 1.0) > 1e-3; };
    if (!far(x) || !far(y) || !far(y / x) || !far((1.0 - x) / (1.0 - y))) continue;
    worst_d2 = std::max(worst_d2, five_term_defect_D2(x, y));
    ++pairs;
  }
  double worst_r = 0;
  pairs = 0;
  while (pairs < 500) {
    double x = unit(rng), y = unit(rng);
    if (y > x) std::swap(x, y);
    if (!(0.0 < y && y < x && x < 1.0) || x - y < 1e-6) continue;
    worst_r = std::max(worst_r, five_term_defect_rogers(x, y));
    ++pairs;
  }
  k.require(worst_d2 < 1e-9, "D2 defect " + fmt(worst_d2));
  k.require(worst_r < 1e-9, "R^ defect " + fmt(worst_r));
  k.detail << "max D2 defect " << fmt(worst_d2) << " (1000 pairs), max R^ defect " << fmt(worst_r) << " (500 pairs)";
}

void criterion_kashaev(Context& c, Check& k) {
  const auto s = sequence(c.special, 100, SeriesMode::exact, "four_one_special");
  double worst = 0;
  for (std::int64_t n = 1; n <= 100; ++n) {
    const double o = kashaev_41_oracle(n);
    worst = std::max(worst, std::abs(s.coeffs[n] - o) / std::abs(o));
  }
  const double c2 = std::abs(s.coeffs[2] - 5.0), c3 = std::abs(s.coeffs[3] - 13.0);
  k.require(worst < 1e-8, "relative defect " + fmt(worst));
  k.require(c2 < 1e-9 && c3 < 1e-9, "spot values c2, c3");
  k.detail << "max relative defect " << fmt(worst) << " for n <= 100 (exact mode), c2 = " << s.coeffs[2].real()
           << ", c3 = " << s.coeffs[3].real();
}

void criterion_growth(Context& c, Check& k) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& s = c.numeric_series();
  const auto est = growth_rate(s);
  const double secs = seconds_since(t0);
  const double rel = std::abs(est.radius - kCvSmall) / kCvSmall;
  k.require(est.growth_rate >= 0.313 && est.growth_rate <= 0.333, "c = " + fmt(est.growth_rate));
  k.require(rel <= 0.03, "radius off by " + fmt(100 * rel) + "%");
  k.require(secs < 30.0, "runtime " + fmt(secs) + " s");
  k.detail.precision(7);
  k.detail << "c = " << est.growth_rate << ", radius = " << est.radius << " (" << fmt(100 * rel) << "% off), gamma = "
           << est.poly_exponent << ", " << fmt(secs) << " s";
}

void criterion_pade(Context& c, Check& k) {
  const auto& s = c.numeric_series();
  const CVec head(s.coeffs.begin(), s.coeffs.begin() + 121);
  const auto pa = pade_analysis(head, 40, 40);
  k.require(!pa.filtered.empty(), "no filtered poles");
  if (!pa.filtered.empty()) {
    const double m = std::abs(pa.filtered.front());
    const double rel = std::abs(m - kCvSmall) / kCvSmall;
    k.require(rel <= 0.05, "nearest pole off by " + fmt(100 * rel) + "%");
    k.detail.precision(7);
    k.detail << "nearest filtered pole |" << m << "| (" << fmt(100 * rel) << "% off), " << pa.filtered.size() << " of "
             << pa.poles.size() << " poles kept";
  }
}

void criterion_asymptotics(Context&, Check& k) {
  const std::int64_t Ns[] = {500, 1000, 2000, 4000};
  for (auto [num, den] : {std::pair<std::int64_t, std::int64_t>{1, 6}, {1, 3}, {1, 2}}) {
    double prev = INFINITY;
    k.detail << num << "/" << den << ":";
    for (auto N : Ns) {
      const double d = qfactorial_asymptotics_defect(num, den, N);
      k.require(d < prev, std::to_string(num) + "/" + std::to_string(den) + " not decreasing at N=" + std::to_string(N));
      prev = d;
      k.detail << " " << fmt(d);
    }
    k.require(prev < 5e-3, "defect at N=4000 is " + fmt(prev));
    k.detail << "; ";
  }
}

void criterion_analyticity(Context& c, Check& k) {
  std::vector<double> roots;  // ||a_n||_1^{1/n}
  double worst_bound = -INFINITY;
  for (std::int64_t n = 1; n <= 40; ++n) {
    const auto a = special_sequence_poly(c.special, n);
    const double norm = a.norm1().convert_to<double>();
    roots.push_back(std::pow(norm, 1.0 / static_cast<double>(n)));
    const double cn = std::abs(sequence_coefficient(c.special, n, SeriesMode::exact));
    worst_bound = std::max(worst_bound, cn / norm);
    k.require(cn <= norm * (1 + 1e-12), "|c_" + std::to_string(n) + "| exceeds ||a_n||_1");
  }
  const auto [lo, hi] = std::minmax_element(roots.end() - 10, roots.end());
  const double ratio = *hi / *lo;
  const bool finite = std::all_of(roots.begin(), roots.end(), [](double v) { return std::isfinite(v); });
  k.require(finite, "non-finite norm");
  k.require(ratio < 1.2, "max/min of last 10 roots is " + fmt(ratio));
  k.detail << "||a_40||^(1/40) = " << fmt(roots.back()) << ", last-10 max/min = " << fmt(ratio)
           << ", max |c_n|/||a_n|| = " << fmt(worst_bound);
}

void criterion_properties(Context& c, Check& k) {
  // Branch integers.
  const auto& b = c.run_battery();
  std::size_t pts = 0, odd = 0;
  const auto even = [](std::int64_t v) { return v % 2 == 0; };
  const auto count_branches = [&](const CriticalPoint& p) {
    ++pts;
    if (!std::all_of(p.branch_A.begin(), p.branch_A.end(), even) || !even(p.branch_L)) ++odd;
  };
  for (const auto& ps : b.points)
    for (const auto& p : ps) count_branches(p);
  for (const auto& p : c.four_one_points) count_branches(p);
  k.require(odd == 0, std::to_string(odd) + " points with odd branch integers");

  // One-variable oracle: roots of the polynomial form whose principal logs
  // solve the logarithmic equation for an admissible Log(eps).
  int families = 0, mismatched = 0;
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t bb = 1; bb <= 3; ++bb)
      for (int eps : {1, -1}) {
        ++families;
        const auto t = one_variable_family(a, bb, eps);
        CVec solved;
        for (const auto& p : solve_variational(t, c.opts.solver)) solved.push_back(p.z[0]);
        CVec oracle;
        for (const cplx z : solve_poly_1var(a, bb, eps)) {
          const cplx base = static_cast<double>(a) * principal_log(z) + static_cast<double>(bb) * principal_log(1.0 - z);
          const std::vector<double> branches = eps == 1 ? std::vector<double>{0.0} : std::vector<double>{1.0, -1.0};
          for (double e : branches)
            if (std::abs(base + cplx(0, kPi * e)) < 1e-8) {
              oracle.push_back(z);
              break;
            }
        }
        const auto covered = [](const CVec& from, const CVec& in) {
          return std::all_of(from.begin(), from.end(), [&](cplx z) {
            return std::any_of(in.begin(), in.end(), [&](cplx w) { return std::abs(z - w) < 1e-8; });
          });
        };
        if (!covered(solved, oracle) || !covered(oracle, solved)) {
          ++mismatched;
          k.detail << "(a,b,eps)=(" << a << "," << bb << "," << eps << ") differ; ";
        }
      }
  k.require(mismatched == 0, std::to_string(mismatched) + " families disagree with the polynomial oracle");

  // Laplace ratio check.
  double worst = 0;
  for (std::size_t i = 0; i < b.terms.size(); ++i)
    for (const auto& p : b.points[i]) worst = std::max(worst, laplace_ratio_check(b.terms[i], p.z));
  k.require(worst < 1e-8, "Laplace ratio defect " + fmt(worst));
  k.detail << pts << " points all even: " << (odd == 0 ? "yes" : "no") << "; " << families
           << " one-variable families, " << mismatched << " mismatched; worst Laplace ratio defect " << fmt(worst);
}

}  // namespace

std::vector<QTerm> load_battery(const AcceptanceOptions& opts) {
  std::vector<std::filesystem::path> files;
  const auto dir = opts.data_dir / "battery";
  if (std::filesystem::is_directory(dir))
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.path().extension() == ".json") files.push_back(e.path());
  if (files.size() < 50) return random_battery(60, opts.seed);
  std::sort(files.begin(), files.end());
  std::vector<QTerm> out;
  for (const auto& f : files) out.push_back(as_plain(parse_qterm(f)));
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  opts.solver.validate();
  Context ctx{opts, {}, {}, {}, {}, {}};
  std::vector<CriterionResult> out;
  using Fn = void (*)(Context&, Check&);
  const std::vector<std::pair<std::string, Fn>> criteria = {
      {"4_1 variational solutions", criterion_solutions},
      {"regulator value", criterion_regulator},
      {"critical values", criterion_cv},
      {"diagram certificate on battery", criterion_diagram},
      {"five-term suites", criterion_five_term},
      {"Kashaev oracle equality", criterion_kashaev},
      {"growth rate", criterion_growth},
      {"Pade probe", criterion_pade},
      {"q-factorial asymptotics", criterion_asymptotics},
      {"analyticity bound", criterion_analyticity},
      {"property suite", criterion_properties},
  };
  bool loaded = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    CriterionResult r;
    r.id = static_cast<int>(i) + 1;
    r.name = criteria[i].first;
    Check k;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if (!loaded) {
        ctx.four_one = load_plain(opts, "four_one.json", one_variable_family(-1, 2, -1));
        ctx.special = load_special(opts);
        loaded = true;
      }
      criteria[i].second(ctx, k);
    } catch (const std::exception& e) {
      k.pass = false;
      k.detail << "threw: " << e.what();
    }
    r.seconds = seconds_since(t0);
    r.pass = k.pass;
    r.detail = k.detail.str();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name << ": " << r.detail
     << " (" << fmt(r.seconds) << " s)";
  return os.str();
}

}  // namespace qbloch
