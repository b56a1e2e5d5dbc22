// Writes the random q-term battery as one JSON file per term.
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "qbloch/bloch.hpp"
#include "qbloch/io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"generate data/battery"};
  std::string dir = "data/battery";
  std::size_t count = 60;
  std::uint64_t seed = 2024;
  app.add_option("dir", dir)->capture_default_str();
  app.add_option("--count", count)->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(dir);
  const auto terms = qbloch::random_battery(count, seed);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "term_%03zu.json", i);
    auto doc = qbloch::to_json(terms[i]);
    doc["seed"] = seed;
    doc["index"] = i;
    qbloch::write_atomic(std::filesystem::path(dir) / name, doc.dump(2) + "\n");
  }
  std::cout << "wrote " << terms.size() << " terms to " << dir << "\n";
}
