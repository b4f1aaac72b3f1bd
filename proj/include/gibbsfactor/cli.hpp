#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "gibbsfactor/factor.hpp"
#include "gibbsfactor/potential.hpp"

namespace gf {

struct RunConfig {
  std::string name = "config";
  std::vector<std::vector<int>> x_rows, y_rows;
  std::vector<int> map;
  struct Entry {
    int i = 0, j = 0;
    Rational weight;   // e^{f[ij]} for "weight" lines
    double value = 0;  // f[ij] for "f" lines
    bool exact = true;
    int line = 0;
  };
  std::vector<Entry> entries;
  std::vector<std::vector<Rational>> stochastic_rows;
  int depth = 12;
  int k_bound = 8;
  int power_bound = 20;
  int hhat_depth = 64;
  Mode mode = Mode::exact;
};

// Key-value lines; throws Error(Errc::config) with "source:line: message".
RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig load_config(const std::filesystem::path& path);

struct Pipeline {
  FactorSystem fs;
  TwoBlockPotential f;
  std::optional<Matrix<Rational>> stochastic;
};

// Validation failures keep their own error code.
Pipeline materialize(const RunConfig& cfg);

struct CommandOptions {
  std::optional<int> depth;
  std::optional<Mode> mode;
  std::optional<double> pressure;  // overrides log of the Perron root in gibbs
  std::filesystem::path out = ".";
  bool strict = false;
};

// Exit codes: 0 success, 1 failure, 2 config or validation error, 3 budget exceeded, 4 open case under --strict.
int cmd_analyze(const RunConfig& cfg, const CommandOptions& opt);
int cmd_hhat(const RunConfig& cfg, const CommandOptions& opt);
int cmd_gibbs(const RunConfig& cfg, const CommandOptions& opt);

struct Fixture {
  std::string name;
  std::string description;
  std::string config;  // config file text
};
const std::vector<Fixture>& fixtures();
const Fixture* find_fixture(const std::string& name);
RunConfig fixture_config(const Fixture& fx);

struct ExamplesOptions {
  bool list = false;
  bool write_golden = false;
  std::filesystem::path golden_dir;
  std::filesystem::path work_dir;
};
std::filesystem::path default_golden_dir();
// Runs analyze, hhat and gibbs on each fixture and diffs the outputs against the golden files.
int cmd_examples(const ExamplesOptions& opt, std::ostream& log);

}  // namespace gf
