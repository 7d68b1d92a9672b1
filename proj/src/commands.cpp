#include "qpbeam/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpbeam/hermite_gauss.hpp"
#include "qpbeam/quadrature.hpp"

namespace qpbeam::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kUnits = "hbar*omega0/(c^2*T)";

json beam_json(const BeamParams& b) {
  return {{"omega0", b.omega0()},         {"w0", b.w0()},
          {"c", b.c()},                   {"wavelength", b.wavelength()},
          {"lambda_bar", b.lambda_bar()}, {"theta0", b.theta0()},
          {"rayleigh_range", b.rayleigh_range()},
          {"paraxiality_warning", b.paraxiality_warning()}};
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig resolve_config(const Options& options) {
  RunConfig cfg = options.config ? load_config(*options.config) : RunConfig{};
  if (options.ncut) {
    if (*options.ncut < 0) throw std::invalid_argument("--ncut must be non-negative");
    cfg.ncut = *options.ncut;
  }
  if (options.out) cfg.output_dir = options.out->string();
  return cfg;
}

int cmd_build_operators(const RunConfig& config, std::ostream& out) {
  const ModeSpace space(config.ncut);
  const BeamParams beam = config.beam();
  const auto p = build_P(space, beam);
  const auto j = build_J(space, beam);
  const QuadraticOperator* ops[] = {&p.px, &p.py, &p.pz, &j.jx, &j.jy, &j.jz, &j.sz, &j.lz};

  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  json manifest = {{"schema_version", kSchemaVersion},
                   {"ncut", space.ncut()},
                   {"dim", space.dim()},
                   {"units", kUnits},
                   {"beam", beam_json(beam)},
                   {"operators", json::array()}};
  for (const QuadraticOperator* op : ops) {
    const std::string file = op->name() + ".csv";
    auto f = open_output(dir / file);
    write_operator_csv(f, *op);
    if (!f) throw std::runtime_error("failed writing '" + (dir / file).string() + "'");
    const auto nnz = (op->coefficients().array() != cplx(0.0)).count();
    manifest["operators"].push_back({{"name", op->name()},
                                     {"file", file},
                                     {"units_tag", op->units().name()},
                                     {"unit_value", op->unit_value()},
                                     {"nonzeros", nnz}});
  }
  auto mf = open_output(dir / "manifest.json");
  mf << manifest.dump(2) << '\n';
  out << manifest.dump(2) << '\n';
  return kSuccess;
}

int cmd_check_ccr(const RunConfig& config, std::ostream& out) {
  const ModeSpace space(config.ncut);
  const auto table = ccr_table(space, config.beam(), config.tol_ccr);
  json pairs = json::array();
  bool ok = true;
  for (const auto& r : table) {
    ok = ok && r.matches;
    pairs.push_back({{"pair", {r.a, r.b}},
                     {"rhs", r.identified_rhs},
                     {"coefficient", complex_json(r.coefficient)},
                     {"residual_norm", r.residual_norm},
                     {"expected_rhs", r.expected.rhs},
                     {"expected_coefficient", r.expected.coefficient},
                     {"matches", r.matches}});
  }
  const json report = {{"schema_version", kSchemaVersion},
                       {"ncut", space.ncut()},
                       {"interior_max_index", space.ncut() - 2},
                       {"tolerance", config.tol_ccr},
                       {"convention", "[U,V] = i*lambda_bar*coefficient*rhs"},
                       {"pairs", pairs},
                       {"passed", ok}};
  out << report.dump(2) << '\n';
  return ok ? kSuccess : kToleranceFailure;
}

int cmd_expect(const RunConfig& config, const fs::path& state_path, std::ostream& out) {
  const ModeSpace space(config.ncut);
  const BeamParams beam = config.beam();
  const StateFile sf = load_state(state_path, space);
  const OperatorSet ops(space, beam);

  json moments = json::array();
  for (const char* name : {"Px", "Py", "Pz", "Jx", "Jy", "Jz", "Sz", "Lz"}) {
    const Expectation e = expectation(sf.state, ops.at(name));
    moments.push_back({{"quantity", name},
                       {"value", e.value},
                       {"coefficient", complex_json(e.coefficient)},
                       {"units_tag", e.units.name()}});
  }

  json report = {{"schema_version", kSchemaVersion},
                 {"kind", to_string(sf.state.kind())},
                 {"ncut", space.ncut()},
                 {"units", kUnits},
                 {"beam", beam_json(beam)},
                 {"moments", moments},
                 {"tilt_angles", nullptr},
                 {"helicity", nullptr},
                 {"per_photon_oam", nullptr}};
  const double pz = expectation(sf.state, ops.at("Pz")).value;
  if (pz != 0.0) {
    const TiltAngles t = tilt_angles(sf.state, {ops.at("Px"), ops.at("Py"), ops.at("Pz")});
    report["tilt_angles"] = {{"theta_x", t.theta_x}, {"theta_y", t.theta_y}};
    report["per_photon_oam"] = per_photon_oam(sf.state, ops.at("Lz"), ops.at("Pz"));
  }
  if (sf.polarization) report["helicity"] = helicity(*sf.polarization);
  out << report.dump(2) << '\n';
  return kSuccess;
}

int cmd_oracle(const RunConfig& config, const Options& options, std::ostream& out,
               std::ostream& err) {
  if (!options.state) throw std::invalid_argument("oracle needs --state");
  const ModeSpace space(config.ncut);
  const BeamParams beam = config.beam();
  const StateFile sf = load_state(*options.state, space);
  const GridSpec grid = config.grid();

  const CoverageCheck coverage = check_coverage(grid, beam);
  if (coverage.warning) err << "warning: " << coverage.message << '\n';
  if (coverage.warning && options.strict) {
    err << "error: coverage warning is fatal with --strict\n";
    return kToleranceFailure;
  }

  const MomentReport report = integrate_moments(sf.state, beam, grid);
  json rows = json::array();
  for (const auto& c : report.comparisons)
    rows.push_back({{"quantity", c.quantity},
                    {"operator_value", c.operator_value},
                    {"quadrature_value", c.quadrature_value},
                    {"rel_error", c.rel_error}});
  const bool ok = report.max_rel_error() < config.tol_oracle;
  const json doc = {{"schema_version", kSchemaVersion},
                    {"units", kUnits},
                    {"grid",
                     {{"n", grid.n},
                      {"half_width", grid.extent_factor * beam.w0()},
                      {"z", grid.z}}},
                    {"coverage_warning", coverage.warning},
                    {"coverage_message", coverage.message},
                    {"tolerance", config.tol_oracle},
                    {"comparisons", rows},
                    {"max_rel_error", report.max_rel_error()},
                    {"passed", ok}};
  out << doc.dump(2) << '\n';

  if (options.density) {
    auto f = open_output(*options.density);
    f << "x,y,Px,Py,Pz,jx,jy,jz\n";
    for (const auto& s : density_map(sf.state, beam, grid))
      f << format_double(s.x) << ',' << format_double(s.y) << ',' << format_double(s.p[0]) << ','
        << format_double(s.p[1]) << ',' << format_double(s.p[2]) << ','
        << format_double(s.j[0]) << ',' << format_double(s.j[1]) << ','
        << format_double(s.j[2]) << '\n';
  }
  return ok ? kSuccess : kToleranceFailure;
}

int cmd_modes_dump(const RunConfig& config, std::ostream& out) {
  const BeamParams beam = config.beam();
  const GridSpec grid = config.grid();
  const int p = config.ncut + 1;
  const auto xs = uniform_nodes(grid.n, grid.extent_factor * beam.w0());
  std::vector<cplx> u(p), du(p);
  out << "n,x,re,im,abs2\n";
  for (int n = 0; n < p; ++n)
    for (double x : xs) {
      hg1d_table(x, grid.z, beam, u, du);
      out << n << ',' << format_double(x) << ',' << format_double(u[n].real()) << ','
          << format_double(u[n].imag()) << ',' << format_double(std::norm(u[n])) << '\n';
    }
  return kSuccess;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transverse momentum and angular momentum of quasi-paraxial photon beams"};
  app.require_subcommand(1);

  Options opt;
  std::string config_path, state_path, out_dir, density_path;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration JSON");
    sub->add_option("--ncut", opt.ncut, "Override the mode truncation order");
    sub->add_option("--out", out_dir, "Output directory");
  };
  auto* build = app.add_subcommand("build-operators", "Write operator CSVs and a manifest");
  auto* ccr = app.add_subcommand("check-ccr", "Commutator table on the interior subspace");
  auto* expect = app.add_subcommand("expect", "Expectation values for a state file");
  auto* oracle = app.add_subcommand("oracle", "Field quadrature versus operator expectations");
  auto* modes = app.add_subcommand("modes-dump", "1D Hermite-Gauss profiles as CSV");
  for (auto* sub : {build, ccr, expect, oracle, modes}) add_common(sub);
  expect->add_option("--state", state_path, "State JSON")->required();
  oracle->add_option("--state", state_path, "State JSON")->required();
  oracle->add_flag("--strict", opt.strict, "Treat grid coverage warnings as failures");
  oracle->add_option("--density", density_path, "Write the density map CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  if (!config_path.empty()) opt.config = config_path;
  if (!state_path.empty()) opt.state = state_path;
  if (!out_dir.empty()) opt.out = out_dir;
  if (!density_path.empty()) opt.density = density_path;

  try {
    const RunConfig cfg = resolve_config(opt);
    if (*build) return cmd_build_operators(cfg, out);
    if (*ccr) return cmd_check_ccr(cfg, out);
    if (*expect) return cmd_expect(cfg, *opt.state, out);
    if (*oracle) return cmd_oracle(cfg, opt, out, err);
    return cmd_modes_dump(cfg, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kConfigError;
}

}  // namespace qpbeam::cli
