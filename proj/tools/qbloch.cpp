// qbloch: critical points, Bloch elements, critical values and series
// diagnostics for q-terms stored as JSON.
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbloch/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"q-term critical points, Bloch elements and series diagnostics"};
  app.require_subcommand(1);

  qbloch::RunConfig cfg;
  const auto add_common = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("input", cfg.input_path, "q-term JSON file")->required();
    sub->add_option("--starts", cfg.starts, "multistart count")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Newton tolerance")->capture_default_str();
    sub->add_option("--n-max", cfg.n_max, "largest series index (0: command default)");
    sub->add_option("--mode", cfg.mode, "exact | numeric")->capture_default_str();
    sub->add_option("--output,-o", cfg.output, "write the artifact here instead of stdout");
    sub->add_option("--format", cfg.format, "json | csv")->capture_default_str();
  };
  const std::pair<const char*, const char*> commands[] = {
      {"solve", "critical points of the variational equations"},
      {"bloch", "extended Bloch elements and regulator values"},
      {"cv", "critical values e^{-V}"},
      {"seq", "root-of-unity coefficients c_n of a special q-term"},
      {"sing", "growth rate and Pade poles of the coefficient series"},
      {"check", "compare series singularities with critical values"},
      {"selftest", "run the acceptance battery"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    const bool self = std::string(name) == "selftest";
    add_common(sub, !self);
    if (self) sub->add_option("--data", cfg.data_dir, "directory with four_one.json and battery/");
    sub->callback([&cfg, n = std::string(name)] { cfg.command = qbloch::parse_command(n); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << nlohmann::json{{"error", "ConfigError"}, {"message", e.what()}, {"issues", nlohmann::json::array()}}.dump()
              << std::endl;
    return 1;
  }
  return qbloch::run(cfg, std::cout, std::cerr);
}
