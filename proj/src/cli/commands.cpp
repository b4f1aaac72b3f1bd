#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "gibbsfactor/cli.hpp"
#include "gibbsfactor/error.hpp"
#include "gibbsfactor/hhat.hpp"
#include "gibbsfactor/measures.hpp"
#include "gibbsfactor/pressure.hpp"

namespace gf {

namespace fs = std::filesystem;

namespace {

int exit_code(Errc c) {
  switch (c) {
    case Errc::config:
    case Errc::bad_dimension:
    case Errc::zero_row_or_column:
    case Errc::not_shift_commuting:
    case Errc::not_surjective:
    case Errc::setting_c_violation:
    case Errc::support_mismatch:
    case Errc::not_stochastic:
      return 2;
    case Errc::depth_overflow:
      return 3;
    default:
      return 1;
  }
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

std::ofstream open_out(const fs::path& dir, const char* file) {
  fs::create_directories(dir);
  std::ofstream os(dir / file);
  if (!os) throw Error(Errc::config, "cannot write " + (dir / file).string());
  return os;
}

Mode mode_of(const RunConfig& cfg, const CommandOptions& opt) { return opt.mode.value_or(cfg.mode); }

RunConfig effective(const RunConfig& cfg, const CommandOptions& opt) {
  RunConfig c = cfg;
  c.mode = mode_of(cfg, opt);
  if (c.mode == Mode::exact)
    for (const auto& e : c.entries)
      if (!e.exact) throw Error(Errc::config, cfg.name + ":" + std::to_string(e.line) + ": 'f' lines need mode f64");
  if (opt.depth) c.depth = *opt.depth;
  return c;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void write_structure(std::ostream& os, const char* label, const TransitionSystem& sys, int power_bound) {
  auto s = structure_report(sys, power_bound);
  os << label << ": k=" << sys.size() << " irreducible=" << yes_no(s.irreducible);
  os << " mixing-power=" << (s.mixing_power ? std::to_string(*s.mixing_power) : "none<=" + std::to_string(s.bound));
  os << " weak-spec-gap=" << (s.weak_spec_gap ? std::to_string(*s.weak_spec_gap) : "none<=" + std::to_string(s.bound))
     << "\n";
}

template <class T>
SequenceTable<T> h_of(const Pipeline& p, int depth) {
  return h_table<T>(p.fs, p.f, depth);
}

template <class T>
int analyze_impl(const RunConfig& cfg, const Pipeline& p, const CommandOptions& opt) {
  auto os = open_out(opt.out, "report.txt");
  os << "system: " << cfg.name << "\n";
  os << "mode: " << (cfg.mode == Mode::exact ? "exact" : "f64") << "\n";
  os << "depth: " << cfg.depth << "\n";
  write_structure(os, "X", p.fs.domain, cfg.power_bound);
  write_structure(os, "Y", p.fs.codomain, cfg.power_bound);

  auto prof = settingc_profile(p.fs);
  os << "setting-c: " << (prof.valid ? "valid" : "invalid") << ", y-type " << ytype_name(prof.y_type) << "\n";
  for (const auto& f : prof.failures) os << "setting-c failure: " << f << "\n";

  auto mix = fiber_submixing(p.fs, cfg.k_bound);
  if (mix.witnessed_k)
    os << "fiber-mixing: witnessed at k=" << *mix.witnessed_k << "\n";
  else
    os << "fiber-mixing: not witnessed ≤ " << mix.checked_up_to << "\n";
  for (const auto& c : mix.counterexamples)
    os << "fiber-mixing counterexample k=" << c.k << ": w=" << c.w << " u=" << c.u << " v=" << c.v << "\n";

  auto h = h_of<T>(p, cfg.depth);
  {
    auto seq = open_out(opt.out, "sequence.csv");
    write_sequence_csv(seq, h);
  }
  auto logs = log_table(h);
  auto add = additivity_report(logs, cfg.depth);
  os << "additivity: " << additivity_name(add.classification) << "\n";
  os << "additivity bound: " << add.fitted_bound << "\n";
  os << "max defect: " << format_value(add.max_defect) << "\n";
  if (add.classification == Additivity::weakly_almost_additive)
    os << "bound: log(c(n+1)) with c = " << format_value(add.schedule_factor) << "\n";

  int code = 0;
  if (prof.valid) {
    auto cls = classify_phd1(p.fs, p.f);
    os << "phd1: " << phd1_case_name(cls.kind) << "\n";
    os << "variant: " << variant_name(cls.variant) << "\n";
    os << "potential: " << cls.potential_regularity << "\n";
    for (const auto& c : cls.conditions) os << "condition: " << c << "\n";
    if (opt.strict && cls.kind == Phd1Case::open_antidiagonal_asymmetric) code = 4;
  } else {
    os << "phd1: not applicable\n";
  }
  return code;
}

template <class T>
int hhat_impl(const RunConfig& cfg, const Pipeline& p, const CommandOptions& opt) {
  auto b = build_hhat(p.fs, p.f, cfg.hhat_depth);
  auto os = open_out(opt.out, "hhat.txt");
  os << "system: " << cfg.name << "\n";
  write_hhat(os, b.potential, b.classification);
  if (opt.strict && b.classification.kind == Phd1Case::open_antidiagonal_asymmetric) return 4;
  return 0;
}

void write_diag(std::ostream& os, const char* label, const GibbsDiagnostics& d) {
  os << label << ": " << gibbs_kind_name(d.kind) << " (" << d.schedule << ")";
  os << " band-variation=" << format_value(d.band_variation) << " best-fit-P=" << format_value(d.best_fit_pressure)
     << "\n";
}

template <class T>
int gibbs_impl(const RunConfig& cfg, const Pipeline& p, const CommandOptions& opt, std::ostream& os) {
  const int n = cfg.depth;
  auto eq = gibbs_from_potential<T>(p.fs.domain, p.f);
  MarkovMeasure<T> mu = eq.measure;
  std::string source = "equilibrium measure of f";
  if (p.stochastic) {
    if constexpr (is_exact_v<T>)
      mu = markov_measure<T>(p.fs.domain, *p.stochastic);
    else
      mu = markov_measure<T>(p.fs.domain, convert<double>(*p.stochastic));
    source = "markov measure from stochastic rows";
  }
  double pressure = opt.pressure.value_or(eq.pressure);
  os << "measure: " << source << "\n";
  os << "pressure: " << format_value(pressure) << "\n";

  auto table = pushforward<T>(p.fs, mu, n);
  {
    auto m = open_out(opt.out, "measure.csv");
    write_measure_csv(m, table);
  }
  auto masses = log_table(table);
  auto domain = check_gibbs_on_domain(mu, p.f, pressure, n);
  write_diag(os, "domain vs f", domain);

  auto h = log_table(h_table<T>(p.fs, p.f, n));
  auto g = log_table(g_table<T>(p.fs, p.f, n));
  auto vs_h = gibbs_diagnostics_vs_sequence(masses, h, pressure, n);
  auto vs_g = gibbs_diagnostics_vs_sequence(masses, g, pressure, n);
  write_diag(os, "pushforward vs h", vs_h);
  write_diag(os, "pushforward vs g", vs_g);

  const GibbsDiagnostics* curve = &vs_h;
  std::optional<GibbsDiagnostics> vs_pot;
  if (settingc_profile(p.fs).valid) {
    auto b = build_hhat(p.fs, p.f, cfg.hhat_depth);
    try {
      vs_pot = gibbs_diagnostics_vs_potential(masses, b.potential, pressure, n);
      os << "potential: " << variant_name(b.potential.variant) << "\n";
      write_diag(os, "pushforward vs potential", *vs_pot);
      curve = &*vs_pot;
    } catch (const Error& e) {
      if (e.code() != Errc::undefined_at_point) throw;
      os << "pushforward vs potential: undefined (" << e.what() << ")\n";
    }
  } else {
    os << "pushforward vs potential: not applicable\n";
  }
  auto d = open_out(opt.out, "defects.csv");
  write_defects_csv(d, *curve);
  return 0;
}

}  // namespace

int cmd_analyze(const RunConfig& raw, const CommandOptions& opt) {
  return guarded([&] {
    auto cfg = effective(raw, opt);
    auto p = materialize(cfg);
    return cfg.mode == Mode::exact ? analyze_impl<Rational>(cfg, p, opt) : analyze_impl<double>(cfg, p, opt);
  });
}

int cmd_hhat(const RunConfig& raw, const CommandOptions& opt) {
  return guarded([&] {
    auto cfg = effective(raw, opt);
    auto p = materialize(cfg);
    return cfg.mode == Mode::exact ? hhat_impl<Rational>(cfg, p, opt) : hhat_impl<double>(cfg, p, opt);
  });
}

int cmd_gibbs(const RunConfig& raw, const CommandOptions& opt) {
  return guarded([&] {
    auto cfg = effective(raw, opt);
    auto p = materialize(cfg);
    std::ostringstream body;
    body << "system: " << cfg.name << "\n";
    int code;
    if (cfg.mode == Mode::exact) {
      try {
        std::ostringstream exact;
        code = gibbs_impl<Rational>(cfg, p, opt, exact);
        body << "mode: exact\n" << exact.str();
      } catch (const Error& e) {
        if (e.code() != Errc::not_rational) throw;
        // irrational Perron root: redo everything in binary64
        auto cfg64 = cfg;
        cfg64.mode = Mode::binary64;
        auto p64 = materialize(cfg64);
        body << "mode: f64 (exact pressure is irrational)\n";
        code = gibbs_impl<double>(cfg64, p64, opt, body);
      }
    } else {
      body << "mode: f64\n";
      code = gibbs_impl<double>(cfg, p, opt, body);
    }
    auto os = open_out(opt.out, "report.txt");
    os << body.str();
    return code;
  });
}

}  // namespace gf
