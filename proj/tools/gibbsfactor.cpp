#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "gibbsfactor/cli.hpp"
#include "gibbsfactor/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relative pressure sequences, piecewise potentials and Gibbs diagnostics for 3-to-2 factor maps"};
  app.require_subcommand(1);

  std::string config, fixture, mode;
  gf::CommandOptions opt;
  std::string out = ".";
  int depth = 0;
  double pressure = 0;

  std::map<std::string, CLI::App*> runs;
  for (const char* name : {"analyze", "hhat", "gibbs"}) {
    auto* sub = app.add_subcommand(name);
    auto* cfg = sub->add_option("--config", config, "config file");
    sub->add_option("--fixture", fixture, "bundled fixture instead of a config file")->excludes(cfg);
    sub->add_option("--depth", depth, "word length N")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode, "exact or f64")->check(CLI::IsMember({"exact", "f64"}));
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--strict", opt.strict, "exit 4 on the open antidiagonal case");
    if (std::string(name) == "gibbs") sub->add_option("--pressure", pressure, "pressure P for the Y-side diagnostics");
    runs[name] = sub;
  }

  gf::ExamplesOptions ex;
  std::string golden_dir, work_dir;
  auto* examples = app.add_subcommand("examples", "run bundled fixtures and diff against golden outputs");
  examples->add_flag("--list", ex.list, "list fixtures");
  examples->add_flag("--golden", ex.write_golden, "rewrite the golden files");
  examples->add_option("--golden-dir", golden_dir, "golden directory");
  examples->add_option("--work", work_dir, "scratch directory");

  CLI11_PARSE(app, argc, argv);

  if (examples->parsed()) {
    ex.golden_dir = golden_dir;
    ex.work_dir = work_dir;
    return gf::cmd_examples(ex, std::cout);
  }

  gf::RunConfig cfg;
  try {
    if (!fixture.empty()) {
      const auto* fx = gf::find_fixture(fixture);
      if (!fx) throw gf::Error(gf::Errc::config, "unknown fixture '" + fixture + "'");
      cfg = gf::fixture_config(*fx);
    } else if (!config.empty()) {
      cfg = gf::load_config(config);
    } else {
      throw gf::Error(gf::Errc::config, "--config or --fixture is required");
    }
  } catch (const gf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (depth > 0) opt.depth = depth;
  if (!mode.empty()) opt.mode = mode == "exact" ? gf::Mode::exact : gf::Mode::binary64;
  opt.out = out;

  if (runs["analyze"]->parsed()) return gf::cmd_analyze(cfg, opt);
  if (runs["hhat"]->parsed()) return gf::cmd_hhat(cfg, opt);
  if (runs["gibbs"]->count("--pressure")) opt.pressure = pressure;
  return gf::cmd_gibbs(cfg, opt);
}
