#include <fstream>
#include <sstream>

#include "gibbsfactor/cli.hpp"
#include "gibbsfactor/error.hpp"

namespace gf {

namespace {

struct LineError {
  const std::string& source;
  int line;
  [[noreturn]] void operator()(const std::string& msg) const {
    throw Error(Errc::config, source + ":" + std::to_string(line) + ": " + msg);
  }
};

int to_int(const std::string& tok, const LineError& fail) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) fail("not an integer: '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    fail("not an integer: '" + tok + "'");
  }
}

Rational to_rational(const std::string& tok, const LineError& fail) {
  try {
    return parse_rational(tok);
  } catch (const std::exception&) {
    fail("not a rational number: '" + tok + "'");
  }
}

double to_real(const std::string& tok, const LineError& fail) {
  try {
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) fail("not a number: '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    fail("not a number: '" + tok + "'");
  }
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string raw;
  int line_no = 0;
  bool mode_given = false, saw_f = false;
  while (std::getline(in, raw)) {
    ++line_no;
    LineError fail{source, line_no};
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto args = [&](std::size_t n) {
      if (tok.size() - 1 != n) fail("'" + key + "' takes " + std::to_string(n) + " value(s)");
    };
    auto int_row = [&]() {
      if (tok.size() < 2) fail("'" + key + "' needs at least one entry");
      std::vector<int> row;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        int v = to_int(tok[i], fail);
        if (v != 0 && v != 1) fail("transition entries must be 0 or 1");
        row.push_back(v);
      }
      return row;
    };
    if (key == "name") {
      args(1);
      cfg.name = tok[1];
    } else if (key == "x_row") {
      cfg.x_rows.push_back(int_row());
    } else if (key == "y_row") {
      cfg.y_rows.push_back(int_row());
    } else if (key == "map") {
      if (tok.size() < 2) fail("'map' needs one image per X symbol");
      cfg.map.clear();
      for (std::size_t i = 1; i < tok.size(); ++i) cfg.map.push_back(to_int(tok[i], fail));
    } else if (key == "weight" || key == "f") {
      args(3);
      RunConfig::Entry e;
      e.i = to_int(tok[1], fail);
      e.j = to_int(tok[2], fail);
      e.line = line_no;
      if (key == "weight") {
        e.weight = to_rational(tok[3], fail);
        if (sgn(e.weight) <= 0) fail("weights must be positive");
      } else {
        e.value = to_real(tok[3], fail);
        e.exact = false;
        saw_f = true;
      }
      cfg.entries.push_back(e);
    } else if (key == "stochastic_row") {
      if (tok.size() < 2) fail("'stochastic_row' needs entries");
      std::vector<Rational> row;
      for (std::size_t i = 1; i < tok.size(); ++i) row.push_back(to_rational(tok[i], fail));
      cfg.stochastic_rows.push_back(row);
    } else if (key == "depth" || key == "k_bound" || key == "power_bound" || key == "hhat_depth") {
      args(1);
      int v = to_int(tok[1], fail);
      if (v < 1) fail("'" + key + "' must be positive");
      (key == "depth" ? cfg.depth : key == "k_bound" ? cfg.k_bound : key == "power_bound" ? cfg.power_bound : cfg.hhat_depth) = v;
    } else if (key == "mode") {
      args(1);
      if (tok[1] == "exact")
        cfg.mode = Mode::exact;
      else if (tok[1] == "f64")
        cfg.mode = Mode::binary64;
      else
        fail("mode must be 'exact' or 'f64'");
      mode_given = true;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  LineError at_end{source, line_no};
  if (cfg.x_rows.empty()) at_end("no x_row lines");
  if (cfg.y_rows.empty()) at_end("no y_row lines");
  if (cfg.map.empty()) at_end("no map line");
  if (saw_f) {
    if (mode_given && cfg.mode == Mode::exact) at_end("'f' lines need mode f64; give exact weights with 'weight'");
    cfg.mode = Mode::binary64;
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config, path.string() + ": cannot open");
  return parse_config(in, path.string());
}

Pipeline materialize(const RunConfig& cfg) {
  int kx = static_cast<int>(cfg.x_rows.size());
  int ky = static_cast<int>(cfg.y_rows.size());
  auto x = build_system(kx, cfg.x_rows);
  auto y = build_system(ky, cfg.y_rows);
  Pipeline p{build_factor(x, y, cfg.map, std::max(cfg.depth, 8)), {}, std::nullopt};

  for (const auto& e : cfg.entries)
    if (e.i < 1 || e.i > kx || e.j < 1 || e.j > kx || !x.allowed(e.i, e.j))
      throw Error(Errc::config, cfg.name + ":" + std::to_string(e.line) + ": block " + std::to_string(e.i) +
                                    std::to_string(e.j) + " is not an allowed X-block");
  if (cfg.mode == Mode::exact) {
    std::vector<std::vector<Rational>> w(kx, std::vector<Rational>(kx, Rational(1)));
    for (const auto& e : cfg.entries) w[e.i - 1][e.j - 1] = e.weight;
    p.f = TwoBlockPotential::from_weights(x, w);
  } else {
    std::vector<std::vector<double>> v(kx, std::vector<double>(kx, 0.0));
    for (const auto& e : cfg.entries) v[e.i - 1][e.j - 1] = e.exact ? log_of(e.weight) : e.value;
    p.f = TwoBlockPotential::from_values(x, v);
  }
  if (!cfg.stochastic_rows.empty()) {
    if (static_cast<int>(cfg.stochastic_rows.size()) != kx)
      throw Error(Errc::config, cfg.name + ": need one stochastic_row per X symbol");
    Matrix<Rational> m(kx, kx);
    for (int i = 0; i < kx; ++i) {
      if (static_cast<int>(cfg.stochastic_rows[i].size()) != kx)
        throw Error(Errc::config, cfg.name + ": stochastic_row " + std::to_string(i + 1) + " has the wrong length");
      for (int j = 0; j < kx; ++j) m(i, j) = cfg.stochastic_rows[i][j];
    }
    p.stochastic = m;
  }
  return p;
}

}  // namespace gf
