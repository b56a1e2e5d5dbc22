#include "qbloch/cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include "qbloch/acceptance.hpp"
#include "qbloch/bloch.hpp"
#include "qbloch/errors.hpp"
#include "qbloch/io.hpp"
#include "qbloch/series.hpp"

#ifndef QBLOCH_SOURCE_DATA_DIR
#define QBLOCH_SOURCE_DATA_DIR "data"
#endif

namespace qbloch {

namespace {

SolverConfig solver_of(const RunConfig& cfg) {
  SolverConfig s;
  s.starts = cfg.starts;
  s.seed = cfg.seed;
  s.newton_tol = cfg.tol;
  return s;
}

SeriesMode mode_of(const RunConfig& cfg) { return cfg.mode == "exact" ? SeriesMode::exact : SeriesMode::numeric; }

const SpecialQTerm& special_of(const AnyTerm& t, const RunConfig& cfg) {
  if (const auto* s = std::get_if<SpecialQTerm>(&t)) return *s;
  throw ConfigError("command needs a special q-term (a document with \"quads\"): " + cfg.input_path);
}

std::string term_id(const RunConfig& cfg) { return std::filesystem::path(cfg.input_path).stem().string(); }

json points_json(const std::vector<CriticalPoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

std::vector<CriticalPoint> solve_or_throw(const QTerm& t, const SolverConfig& s) {
  auto pts = solve_variational(t, s);
  if (pts.empty()) throw ConvergenceError("no critical point converged from " + std::to_string(s.starts) + " starts");
  return pts;
}

std::string dispatch(const RunConfig& cfg, std::ostream& out, int& status) {
  if (cfg.command == Command::selftest) {
    AcceptanceOptions o;
    o.seed = cfg.seed;
    o.solver = solver_of(cfg);
    o.solver.seed = 7;  // the acceptance criteria are stated for the default solver seed
    if (!cfg.data_dir.empty()) o.data_dir = cfg.data_dir;
    else if (std::filesystem::is_directory("data/battery")) o.data_dir = "data";
    else o.data_dir = QBLOCH_SOURCE_DATA_DIR;
    std::ostringstream os;
    int passed = 0;
    const auto results = run_acceptance(o);
    for (const auto& r : results) {
      os << format_result(r) << '\n';
      out << format_result(r) << std::endl;
      passed += r.pass;
    }
    os << passed << "/" << results.size() << " criteria passed\n";
    out << passed << "/" << results.size() << " criteria passed" << std::endl;
    status = passed == static_cast<int>(results.size()) ? 0 : 1;
    return cfg.output.empty() ? std::string() : os.str();
  }

  const AnyTerm term = parse_qterm(cfg.input_path);
  const QTerm plain = as_plain(term);
  const SolverConfig s = solver_of(cfg);
  json doc;
  switch (cfg.command) {
    case Command::solve:
      doc = {{"points", points_json(solve_or_throw(plain, s))}};
      break;
    case Command::bloch: {
      json items = json::array();
      for (const auto& p : solve_or_throw(plain, s)) {
        const auto bh = beta_hat(plain, p);
        const auto b = beta(plain, p.z);
        items.push_back({{"point", to_json(p)},
                         {"beta_hat", to_json(bh)},
                         {"beta", to_json(b)},
                         {"rogers", to_json(rogers_of_element(bh))},
                         {"bloch_wigner", bw_of_element(b).real()},
                         {"potential", to_json(potential(plain, p))},
                         {"diagram_defect", certify_diagram(plain, p)}});
      }
      doc = {{"elements", items}};
      break;
    }
    case Command::cv: {
      doc = {{"cv", to_json(cv_from_points(plain, solve_or_throw(plain, s)))}};
      if (std::holds_alternative<SpecialQTerm>(term)) {
        const auto slice = solve_variational_slice(plain, s);
        doc["diagonal_cv"] = to_json(cv_from_points(plain, slice, 1e-8, true));
      }
      break;
    }
    case Command::seq: {
      const auto data = sequence(special_of(term, cfg), cfg.n_max ? cfg.n_max : 100, mode_of(cfg), term_id(cfg));
      if (cfg.format == "csv") return to_csv(data);
      json c = json::array();
      for (auto v : data.coeffs) c.push_back(to_json(v));
      doc = {{"term_id", data.term_id}, {"mode", to_string(data.mode)}, {"n_max", data.n_max}, {"coeffs", c}};
      break;
    }
    case Command::sing: {
      const auto data = sequence(special_of(term, cfg), cfg.n_max ? cfg.n_max : 1000, mode_of(cfg), term_id(cfg));
      auto est = growth_rate(data);
      if (data.n_max >= 120) est.pade_poles = pade_poles(data, 40, 40);
      doc = to_json(est);
      break;
    }
    case Command::check: {
      ConjectureConfig cc;
      cc.solver = s;
      if (cfg.n_max) cc.n_max = cfg.n_max;
      doc = to_json(check_conjecture(special_of(term, cfg), cc));
      break;
    }
    case Command::selftest:
      break;
  }
  return doc.dump(2) + "\n";
}

json error_json(const std::string& kind, const std::string& message, const std::vector<SchemaIssue>& issues = {}) {
  json is = json::array();
  for (const auto& i : issues) is.push_back({{"pointer", i.pointer}, {"message", i.message}});
  return {{"error", kind}, {"message", message}, {"issues", is}};
}

}  // namespace

Command parse_command(const std::string& name) {
  static const std::pair<const char*, Command> table[] = {
      {"solve", Command::solve}, {"bloch", Command::bloch}, {"cv", Command::cv},
      {"seq", Command::seq},     {"sing", Command::sing},   {"check", Command::check},
      {"selftest", Command::selftest}};
  for (const auto& [n, c] : table)
    if (name == n) return c;
  throw ConfigError("unknown command '" + name + "'");
}

void RunConfig::validate() const {
  if (command != Command::selftest && input_path.empty()) throw ConfigError("an input q-term file is required");
  if (n_max < 0) throw ConfigError("--n-max must be nonnegative");
  if (mode != "exact" && mode != "numeric") throw ConfigError("--mode must be exact or numeric");
  if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
  if (format == "csv" && command != Command::seq) throw ConfigError("--format csv is only available for seq");
  if ((command == Command::sing || command == Command::check) && n_max != 0 && n_max < 200)
    throw ConfigError("sing and check need --n-max >= 200");
  if (!(tol > 0)) throw ConfigError("--tol must be positive");
  if (starts < 1) throw ConfigError("--starts must be at least 1");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    int status = 0;
    const std::string text = dispatch(cfg, out, status);
    if (!cfg.output.empty()) write_atomic(cfg.output, text);
    else out << text;
    return status;
  } catch (const SchemaError& e) {
    err << error_json(e.kind(), e.what(), e.issues()).dump() << std::endl;
    return 1;
  } catch (const Error& e) {
    err << error_json(e.kind(), e.what()).dump() << std::endl;
    return e.numerical() ? 2 : 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << error_json("IOError", e.what()).dump() << std::endl;
    return 1;
  }
}

}  // namespace qbloch
