// ntos: terminal-coupled non-Hermitian SSH chain laboratory.
//
// Subcommands: spectrum, nsweep, phase, saturation, curves, unidir, validate.
// Every run is deterministic; artifacts are schema-stable CSV or JSON tables.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "ntos/artifacts.hpp"
#include "ntos/validate.hpp"

namespace {

using ntos::ChainParams;
using ntos::TableArtifact;
using ntos::TableFormat;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitValidationFailure = 2;
constexpr int kExitUsage = 64;

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NRange {
  int lo = 2, hi = 2, step = 1;
};

NRange parse_nrange(const std::string& s) {
  NRange r;
  char extra;
  if (std::sscanf(s.c_str(), "%d:%d:%d%c", &r.lo, &r.hi, &r.step, &extra) == 3) {
  } else if (std::sscanf(s.c_str(), "%d:%d%c", &r.lo, &r.hi, &extra) == 2) {
    r.step = 1;
  } else if (std::sscanf(s.c_str(), "%d%c", &r.lo, &extra) == 1) {
    r.hi = r.lo;
  } else {
    throw usage_error("bad N range '" + s + "', expected a:b[:step]");
  }
  if (r.step < 1 || r.hi < r.lo) throw usage_error("bad N range '" + s + "'");
  return r;
}

struct GridRange {
  double lo = -4, hi = 4;
  int count = 161;
};

GridRange parse_grid(const std::string& s) {
  GridRange g;
  char extra;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.count, &extra) != 3 ||
      g.count < 2 || g.hi <= g.lo) {
    throw usage_error("bad grid range '" + s + "', expected lo:hi:count");
  }
  return g;
}

TableFormat parse_format(const std::string& s) {
  if (s == "csv") return TableFormat::csv;
  if (s == "json") return TableFormat::json;
  throw usage_error("unknown format '" + s + "'");
}

// Per-subcommand state shared by flags and the JSON config override.
struct CommandState {
  ChainParams params{2.0, 1.5, 1.0, 1e-7, 1e-7};
  std::string n_range = "2:60";
  std::string out = "out.csv";
  std::string format = "csv";
  std::string config;

  // string-keyed setters so --config keys map 1:1 onto flag names
  std::map<std::string, std::function<void(const nlohmann::json&)>> setters;

  void bind_common(CLI::App* cmd) {
    cmd->add_option("--t1", params.t1, "intra-cell coupling t1");
    cmd->add_option("--t2", params.t2, "inter-cell coupling t2");
    setters["t1"] = [this](const nlohmann::json& v) { params.t1 = v.get<double>(); };
    setters["t2"] = [this](const nlohmann::json& v) { params.t2 = v.get<double>(); };
    bind_rest(cmd);
  }

  // Everything but t1/t2: the phase raster reuses those flag names for its
  // axis ranges.
  void bind_rest(CLI::App* cmd) {
    cmd->add_option("--gamma", params.gamma, "non-Hermitian asymmetry gamma");
    cmd->add_option("--lambda-l", params.lambda_L, "terminal coupling lambda_L");
    cmd->add_option("--lambda-r", params.lambda_R, "terminal coupling lambda_R");
    cmd->add_option("--out", out, "output path");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--config", config, "JSON config overriding flags");
    setters["gamma"] = [this](const nlohmann::json& v) { params.gamma = v.get<double>(); };
    setters["lambda-l"] = [this](const nlohmann::json& v) { params.lambda_L = v.get<double>(); };
    setters["lambda-r"] = [this](const nlohmann::json& v) { params.lambda_R = v.get<double>(); };
    setters["out"] = [this](const nlohmann::json& v) { out = v.get<std::string>(); };
    setters["format"] = [this](const nlohmann::json& v) { format = v.get<std::string>(); };
  }

  void bind_nrange(CLI::App* cmd, const std::string& def) {
    n_range = def;
    cmd->add_option("--n", n_range, "system sizes a:b[:step]");
    setters["n"] = [this](const nlohmann::json& v) { n_range = v.get<std::string>(); };
  }

  void apply_config() {
    if (config.empty()) return;
    std::ifstream f(config);
    if (!f) throw std::runtime_error("cannot open config " + config);
    nlohmann::json j = nlohmann::json::parse(f);
    if (!j.is_object()) throw usage_error("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      auto it = setters.find(key);
      if (it == setters.end()) throw usage_error("unknown config key '" + key + "'");
      it->second(value);
    }
  }
};

void write_out(const TableArtifact& a, const CommandState& st) {
  ntos::write_table(a, parse_format(st.format), st.out);
  std::cout << st.out << '\n';
}

int cmd_spectrum(CommandState& st) {
  st.apply_config();
  const NRange r = parse_nrange(st.n_range);
  std::vector<ntos::SpectrumRecord> recs;
  for (int n = r.lo; n <= r.hi; n += r.step) {
    recs.push_back(ntos::spectrum(st.params, ntos::SystemSize{n}));
  }
  write_out(spectrum_artifact(st.params, recs), st);
  return kExitOk;
}

int cmd_nsweep(CommandState& st) {
  st.apply_config();
  const NRange r = parse_nrange(st.n_range);
  ntos::SweepResult sweep = ntos::nsweep(st.params, r.lo, std::max(r.hi, r.lo + 1));
  std::erase_if(sweep.entries, [&](const ntos::SweepEntry& e) {
    return (e.N - r.lo) % r.step != 0 || e.N > r.hi;
  });
  TableArtifact a = sweep_artifact(sweep);
  try {
    const ntos::FitResult fit = ntos::fit_linear_regime(sweep);
    a.set_meta("fit_slope", fit.slope);
    a.set_meta("fit_intercept", fit.intercept);
    a.set_meta("fit_points", static_cast<double>(fit.points_used));
    a.set_meta("fit_r2", fit.r2);
  } catch (const ntos::insufficient_data_error& e) {
    a.set_meta("fit_unavailable", std::string(e.what()));
  }
  write_out(a, st);
  return kExitOk;
}

int cmd_phase(CommandState& st, std::vector<std::string>& quantities,
              std::string& t1_range, std::string& t2_range, int& resolution,
              double& tube) {
  st.apply_config();
  if (quantities.empty()) quantities = {"slope"};
  for (const std::string& qname : quantities) {
    ntos::PhaseGridSpec spec;
    const GridRange g1 = parse_grid(t1_range);
    const GridRange g2 = parse_grid(t2_range);
    if (g1.count != g2.count) {
      throw usage_error("t1 and t2 grids must share one resolution");
    }
    spec.t1_lo = g1.lo; spec.t1_hi = g1.hi;
    spec.t2_lo = g2.lo; spec.t2_hi = g2.hi;
    spec.resolution = resolution > 0 ? resolution : g1.count;
    spec.gamma = st.params.gamma;
    spec.lambda_L = st.params.lambda_L;
    spec.lambda_R = st.params.lambda_R;
    spec.tube_halfwidth = tube;
    if (qname == "slope") spec.quantity = ntos::PhaseQuantity::slope;
    else if (qname == "intercept") spec.quantity = ntos::PhaseQuantity::intercept;
    else if (qname == "winding") spec.quantity = ntos::PhaseQuantity::winding;
    else if (qname == "N_c") spec.quantity = ntos::PhaseQuantity::N_c;
    else if (qname == "ln_E_c") spec.quantity = ntos::PhaseQuantity::ln_E_c;
    else throw usage_error("unknown quantity '" + qname + "'");

    std::string path = st.out;
    if (quantities.size() > 1) {
      const auto dot = path.rfind('.');
      path = (dot == std::string::npos ? path + "_" + qname
                                       : path.substr(0, dot) + "_" + qname +
                                             path.substr(dot));
    }
    ntos::write_table(phase_artifact(spec, ntos::phase_grid(spec)),
                      parse_format(st.format), path);
    std::cout << path << '\n';
  }
  return kExitOk;
}

int cmd_saturation(CommandState& st, double& im_tol) {
  st.apply_config();
  const NRange r = parse_nrange(st.n_range);
  const ntos::SweepResult sweep = ntos::nsweep(st.params, r.lo, r.hi);
  const ntos::NumericSaturation d = ntos::detect_saturation(sweep, im_tol);
  write_out(saturation_artifact(sweep, d, im_tol), st);
  return kExitOk;
}

int cmd_curves(CommandState& st, std::string& kind, int& samples) {
  st.apply_config();
  ntos::CurveKind k;
  if (kind == "pbc" || kind == "PBC") k = ntos::CurveKind::PBC;
  else if (kind == "gbz" || kind == "GBZ") k = ntos::CurveKind::GBZ;
  else throw usage_error("unknown curve kind '" + kind + "'");
  write_out(curves_artifact(st.params, ntos::bulk_curves(st.params, k, samples)),
            st);
  return kExitOk;
}

int cmd_unidir(CommandState& st, std::string& zeroed) {
  st.apply_config();
  if (zeroed == "l" || zeroed == "L") st.params.lambda_L = 0.0;
  if (zeroed == "r" || zeroed == "R") st.params.lambda_R = 0.0;
  if ((st.params.lambda_L == 0.0) == (st.params.lambda_R == 0.0)) {
    throw usage_error("unidir: exactly one of lambda_L, lambda_R must be zero");
  }
  return cmd_nsweep(st);
}

int cmd_validate(CommandState& st) {
  st.apply_config();
  const auto results = ntos::run_acceptance();
  bool all = true;
  std::printf("%-4s %-42s %s\n", "id", "criterion", "result");
  for (const auto& r : results) {
    std::printf("%-4d %-42s %s\n", r.id, r.name.c_str(),
                r.passed ? "pass" : "FAIL");
    if (!r.passed) std::printf("     %s\n", r.detail.c_str());
    all = all && r.passed;
  }
  ntos::write_table(validation_artifact(results), parse_format(st.format), st.out);
  std::cout << st.out << '\n';
  return all ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-Hermitian SSH sensor chain laboratory"};
  app.require_subcommand(1);

  CommandState spectrum_st, nsweep_st, phase_st, sat_st, curves_st, unidir_st,
      validate_st;

  auto* spectrum = app.add_subcommand("spectrum", "full complex spectra");
  spectrum_st.bind_common(spectrum);
  spectrum_st.bind_nrange(spectrum, "2:10");

  auto* nsweep = app.add_subcommand("nsweep", "E_min vs system size");
  nsweep_st.bind_common(nsweep);
  nsweep_st.bind_nrange(nsweep, "2:60");

  auto* phase = app.add_subcommand("phase", "parameter-plane rasters");
  std::vector<std::string> quantities;
  std::string t1_range = "-4:4:161", t2_range = "-4:4:161";
  int resolution = 0;
  double tube = 0.05;
  phase_st.bind_rest(phase);
  phase->add_option("--quantity", quantities,
                    "slope, intercept, winding, N_c, ln_E_c (repeatable)");
  phase->add_option("--t1-grid,--t1", t1_range, "t1 axis lo:hi:count");
  phase->add_option("--t2-grid,--t2", t2_range, "t2 axis lo:hi:count");
  phase->add_option("--resolution", resolution, "override axis point count");
  phase->add_option("--tube", tube, "boundary exclusion half-width");
  phase_st.setters["quantity"] = [&quantities](const nlohmann::json& v) {
    quantities = v.is_array() ? v.get<std::vector<std::string>>()
                              : std::vector<std::string>{v.get<std::string>()};
  };
  phase_st.setters["t1-grid"] = [&t1_range](const nlohmann::json& v) {
    t1_range = v.get<std::string>();
  };
  phase_st.setters["t2-grid"] = [&t2_range](const nlohmann::json& v) {
    t2_range = v.get<std::string>();
  };
  phase_st.setters["resolution"] = [&resolution](const nlohmann::json& v) {
    resolution = v.get<int>();
  };
  phase_st.setters["tube"] = [&tube](const nlohmann::json& v) {
    tube = v.get<double>();
  };

  auto* saturation = app.add_subcommand("saturation", "numeric vs closed-form N_c");
  double im_tol = 0.01;
  sat_st.bind_common(saturation);
  sat_st.bind_nrange(saturation, "2:80");
  saturation->add_option("--im-tol", im_tol, "imaginary-onset tolerance");
  sat_st.setters["im-tol"] = [&im_tol](const nlohmann::json& v) {
    im_tol = v.get<double>();
  };

  auto* curves = app.add_subcommand("curves", "bulk-limit spectral curves");
  std::string kind = "pbc";
  int samples = 2048;
  curves_st.bind_common(curves);
  curves->add_option("--kind", kind, "pbc or gbz");
  curves->add_option("--samples", samples, "points per branch");
  curves_st.setters["kind"] = [&kind](const nlohmann::json& v) {
    kind = v.get<std::string>();
  };
  curves_st.setters["samples"] = [&samples](const nlohmann::json& v) {
    samples = v.get<int>();
  };

  auto* unidir = app.add_subcommand("unidir", "one-sided terminal coupling sweep");
  std::string zeroed;
  unidir_st.bind_common(unidir);
  unidir_st.bind_nrange(unidir, "2:80");
  unidir->add_option("--zeroed", zeroed, "which coupling to zero: l or r");
  unidir_st.setters["zeroed"] = [&zeroed](const nlohmann::json& v) {
    zeroed = v.get<std::string>();
  };

  auto* validate = app.add_subcommand("validate", "run the validation suite");
  validate_st.bind_common(validate);
  validate_st.out = "validation.csv";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_st);
    if (nsweep->parsed()) return cmd_nsweep(nsweep_st);
    if (phase->parsed()) {
      return cmd_phase(phase_st, quantities, t1_range, t2_range, resolution, tube);
    }
    if (saturation->parsed()) return cmd_saturation(sat_st, im_tol);
    if (curves->parsed()) return cmd_curves(curves_st, kind, samples);
    if (unidir->parsed()) return cmd_unidir(unidir_st, zeroed);
    if (validate->parsed()) return cmd_validate(validate_st);
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}
