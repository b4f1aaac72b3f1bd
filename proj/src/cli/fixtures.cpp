#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "gibbsfactor/cli.hpp"
#include "gibbsfactor/error.hpp"

#ifndef GIBBSFACTOR_GOLDEN_DIR
#define GIBBSFACTOR_GOLDEN_DIR "tools/golden"
#endif

namespace gf {

namespace fs = std::filesystem;

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = {
      {"example-3.2", "scalar-diagonal submatrix, golden-mean image, f = 0",
       "name example-3.2\n"
       "x_row 0 1 1\n"
       "x_row 1 1 0\n"
       "x_row 1 0 1\n"
       "y_row 0 1\n"
       "y_row 1 1\n"
       "map 1 2 2\n"
       "depth 14\n"},
      {"example-5.1", "jordan-block submatrix, golden-mean image, f = 0",
       "name example-5.1\n"
       "x_row 0 1 0\n"
       "x_row 1 1 1\n"
       "x_row 1 0 1\n"
       "y_row 0 1\n"
       "y_row 1 1\n"
       "map 1 2 2\n"
       "depth 14\n"},
      {"sys-c", "symmetric antidiagonal submatrix, f = 0",
       "name sys-c\n"
       "x_row 0 1 1\n"
       "x_row 1 0 1\n"
       "x_row 1 1 0\n"
       "y_row 0 1\n"
       "y_row 1 1\n"
       "map 1 2 2\n"
       "depth 14\n"},
      {"sys-d", "antidiagonal submatrix with a1 = 2, a2 = 1",
       "name sys-d\n"
       "x_row 0 1 1\n"
       "x_row 1 0 1\n"
       "x_row 1 1 0\n"
       "y_row 0 1\n"
       "y_row 1 1\n"
       "map 1 2 2\n"
       "weight 2 3 2\n"
       "depth 14\n"},
      {"bernoulli-full-shift", "full 3-shift onto the full 2-shift, uniform Bernoulli measure",
       "name bernoulli-full-shift\n"
       "x_row 1 1 1\n"
       "x_row 1 1 1\n"
       "x_row 1 1 1\n"
       "y_row 1 1\n"
       "y_row 1 1\n"
       "map 1 2 2\n"
       "stochastic_row 1/3 1/3 1/3\n"
       "stochastic_row 1/3 1/3 1/3\n"
       "stochastic_row 1/3 1/3 1/3\n"
       "depth 12\n"},
  };
  return all;
}

const Fixture* find_fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name) return &f;
  return nullptr;
}

RunConfig fixture_config(const Fixture& fx) {
  std::istringstream in(fx.config);
  return parse_config(in, fx.name);
}

fs::path default_golden_dir() { return GIBBSFACTOR_GOLDEN_DIR; }

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::set<std::string> files_in(const fs::path& dir) {
  std::set<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) out.insert(e.path().filename().string());
  return out;
}

}  // namespace

int cmd_examples(const ExamplesOptions& opt, std::ostream& log) {
  if (opt.list) {
    for (const auto& f : fixtures()) log << f.name << "  " << f.description << "\n";
    return 0;
  }
  fs::path golden = opt.golden_dir.empty() ? default_golden_dir() : opt.golden_dir;
  fs::path work = opt.work_dir.empty() ? fs::temp_directory_path() / "gibbsfactor-examples" : opt.work_dir;
  fs::remove_all(work);

  using Cmd = int (*)(const RunConfig&, const CommandOptions&);
  const std::pair<const char*, Cmd> commands[] = {{"analyze", cmd_analyze}, {"hhat", cmd_hhat}, {"gibbs", cmd_gibbs}};
  int failures = 0;
  for (const auto& fx : fixtures()) {
    RunConfig cfg = fixture_config(fx);
    for (const auto& [cname, cmd] : commands) {
      CommandOptions co;
      co.out = work / fx.name / cname;
      int rc = cmd(cfg, co);
      if (rc != 0) {
        log << fx.name << "/" << cname << ": exit " << rc << "\n";
        ++failures;
        continue;
      }
      fs::path gdir = golden / fx.name / cname;
      auto produced = files_in(co.out);
      if (opt.write_golden) {
        fs::create_directories(gdir);
        for (const auto& f : files_in(gdir))
          if (!produced.count(f)) fs::remove(gdir / f);
        for (const auto& f : produced) fs::copy_file(co.out / f, gdir / f, fs::copy_options::overwrite_existing);
        log << fx.name << "/" << cname << ": golden written\n";
        continue;
      }
      auto expected = files_in(gdir);
      for (const auto& f : expected)
        if (!produced.count(f)) {
          log << fx.name << "/" << cname << "/" << f << ": missing output\n";
          ++failures;
        }
      for (const auto& f : produced) {
        std::string tag = fx.name + "/" + cname + "/" + f;
        if (!expected.count(f)) {
          log << tag << ": no golden file\n";
          ++failures;
        } else if (slurp(co.out / f) != slurp(gdir / f)) {
          log << tag << ": DIFF\n";
          ++failures;
        } else {
          log << tag << ": ok\n";
        }
      }
    }
  }
  if (!opt.write_golden) log << (failures ? "examples: " + std::to_string(failures) + " mismatch(es)\n" : "examples: all golden outputs match\n");
  return failures ? 1 : 0;
}

}  // namespace gf
