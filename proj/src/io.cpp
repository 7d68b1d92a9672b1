#include "qpbeam/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace qpbeam {

using nlohmann::json;

namespace {

constexpr const char* kCsvHeader = "mu,n,m,mu',n',m',re,im,units_tag";

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view field, const std::string& where) {
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ParseError(where, "cannot parse number '" + std::string(field) + "'");
  return value;
}

}  // namespace

void write_operator_csv(std::ostream& out, const QuadraticOperator& op) {
  const ModeSpace& space = op.space();
  const std::string tag = op.units().name();
  out << kCsvHeader << '\n';
  const auto& c = op.coefficients();
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      const cplx v = c(i, j);
      if (v == cplx(0.0)) continue;
      const ModeIndex a = space.mode_at(i), b = space.mode_at(j);
      out << a.mu << ',' << a.n << ',' << a.m << ',' << b.mu << ',' << b.n << ',' << b.m << ','
          << format_double(v.real()) << ',' << format_double(v.imag()) << ',' << tag << '\n';
    }
}

QuadraticOperator read_operator_csv(std::istream& in, const std::string& name,
                                    const ModeSpace& space, const BeamParams& beam) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ParseError("line 1", "expected header '" + std::string(kCsvHeader) + "'");

  const auto d = static_cast<Eigen::Index>(space.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  std::optional<UnitTag> tag;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    const auto f = split(line, ',');
    if (f.size() != 9) throw ParseError(where, "expected 9 comma-separated fields");
    const ModeIndex a{parse_number<int>(f[0], where), parse_number<int>(f[1], where),
                      parse_number<int>(f[2], where)};
    const ModeIndex b{parse_number<int>(f[3], where), parse_number<int>(f[4], where),
                      parse_number<int>(f[5], where)};
    if (!space.contains(a) || !space.contains(b))
      throw ParseError(where, "mode label outside the truncated space");
    UnitTag t;
    try {
      t = UnitTag::parse(f[8]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(where, e.what());
    }
    if (tag && !(*tag == t)) throw ParseError(where, "inconsistent units_tag");
    tag = t;
    m(space.index_of(a), space.index_of(b)) =
        cplx(parse_number<double>(f[6], where), parse_number<double>(f[7], where));
  }
  const UnitTag units = tag.value_or(UnitTag::dimensionless());
  const bool hermitian = max_abs(m - m.adjoint()) < 1e-12;
  return QuadraticOperator(name, space, std::move(m), units, units.value(beam), hermitian);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    const auto pos = what.find("; ");
    if (pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(line_column(text, e.byte), what);
  }
}

void reject_unknown(const json& obj, const std::string& path, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw ParseError(path + "/" + key, "unknown key");
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(path + "/" + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(path + "/" + key, "expected an integer");
  return v.get<int>();
}

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ParseError(path, what);
}

}  // namespace

GridSpec RunConfig::grid() const {
  GridSpec g;
  g.n = grid_n;
  g.extent_factor = grid_extent_factor;
  g.z = grid_z_over_zr * beam().rayleigh_range();
  return g;
}

RunConfig parse_config(std::string_view text) {
  const json doc = parse_json(text);
  reject_unknown(doc, "", {"schema_version", "beam", "ncut", "grid", "tolerances", "output_dir"});
  RunConfig cfg;
  if (doc.contains("schema_version")) {
    cfg.schema_version = get_int(doc, "schema_version", "");
    require(cfg.schema_version == kSchemaVersion, "/schema_version",
            "unsupported schema version " + std::to_string(cfg.schema_version));
  }
  if (doc.contains("beam")) {
    const json& b = doc.at("beam");
    reject_unknown(b, "/beam", {"wavelength", "omega0", "w0"});
    require(!(b.contains("wavelength") && b.contains("omega0")), "/beam",
            "give either wavelength or omega0, not both");
    if (b.contains("wavelength")) {
      const double lambda = get_number(b, "wavelength", "/beam");
      require(lambda > 0.0, "/beam/wavelength", "must be positive");
      cfg.omega0 = 2.0 * kPi * kSpeedOfLight / lambda;
    }
    if (b.contains("omega0")) {
      cfg.omega0 = get_number(b, "omega0", "/beam");
      require(cfg.omega0 > 0.0, "/beam/omega0", "must be positive");
    }
    if (b.contains("w0")) {
      cfg.w0 = get_number(b, "w0", "/beam");
      require(cfg.w0 > 0.0, "/beam/w0", "must be positive");
    }
  }
  if (doc.contains("ncut")) {
    cfg.ncut = get_int(doc, "ncut", "");
    require(cfg.ncut >= 0, "/ncut", "must be non-negative");
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown(g, "/grid", {"n", "extent_factor", "z_over_zr"});
    if (g.contains("n")) {
      cfg.grid_n = get_int(g, "n", "/grid");
      require(cfg.grid_n >= 3, "/grid/n", "must be at least 3");
    }
    if (g.contains("extent_factor")) {
      cfg.grid_extent_factor = get_number(g, "extent_factor", "/grid");
      require(cfg.grid_extent_factor > 0.0, "/grid/extent_factor", "must be positive");
    }
    if (g.contains("z_over_zr")) cfg.grid_z_over_zr = get_number(g, "z_over_zr", "/grid");
  }
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    reject_unknown(t, "/tolerances", {"ccr", "oracle"});
    if (t.contains("ccr")) cfg.tol_ccr = get_number(t, "ccr", "/tolerances");
    if (t.contains("oracle")) cfg.tol_oracle = get_number(t, "oracle", "/tolerances");
    require(cfg.tol_ccr > 0.0 && cfg.tol_oracle > 0.0, "/tolerances", "must be positive");
  }
  if (doc.contains("output_dir")) {
    require(doc.at("output_dir").is_string(), "/output_dir", "expected a string");
    cfg.output_dir = doc.at("output_dir").get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

StateFile parse_state(std::string_view text, const ModeSpace& space) {
  const json doc = parse_json(text);
  reject_unknown(doc, "", {"schema_version", "kind", "polarization", "amplitudes"});
  require(doc.contains("kind") && doc.at("kind").is_string(), "/kind",
          "missing string field 'kind'");
  const std::string kind = doc.at("kind").get<std::string>();
  require(kind == "coherent" || kind == "single_photon", "/kind",
          "kind must be 'coherent' or 'single_photon'");

  std::optional<Polarization> pol;
  if (doc.contains("polarization")) {
    const json& p = doc.at("polarization");
    require(p.is_array() && p.size() == 4, "/polarization", "expected [re, im, re, im]");
    for (std::size_t k = 0; k < 4; ++k)
      require(p[k].is_number(), "/polarization/" + std::to_string(k), "expected a number");
    try {
      pol = Polarization(cplx(p[0].get<double>(), p[1].get<double>()),
                         cplx(p[2].get<double>(), p[3].get<double>()));
    } catch (const std::invalid_argument& e) {
      throw ParseError("/polarization", e.what());
    }
  }

  Eigen::VectorXcd alpha = Eigen::VectorXcd::Zero(space.dim());
  if (doc.contains("amplitudes")) {
    const json& amps = doc.at("amplitudes");
    require(amps.is_array(), "/amplitudes", "expected an array");
    for (std::size_t k = 0; k < amps.size(); ++k) {
      const std::string path = "/amplitudes/" + std::to_string(k);
      const json& e = amps[k];
      reject_unknown(e, path, {"mu", "n", "m", "re", "im"});
      for (const char* key : {"n", "m"})
        require(e.contains(key), path, std::string("missing field '") + key + "'");
      const int n = get_int(e, "n", path);
      const int m = get_int(e, "m", path);
      const double re = e.contains("re") ? get_number(e, "re", path) : 0.0;
      const double im = e.contains("im") ? get_number(e, "im", path) : 0.0;
      const cplx a(re, im);
      const auto add = [&](int mu, cplx v) {
        const ModeIndex idx{mu, n, m};
        require(idx.valid(), path, "invalid mode label " + to_string(idx));
        require(space.contains(idx), path,
                "mode " + to_string(idx) + " lies outside ncut = " + std::to_string(space.ncut()));
        alpha(space.index_of(idx)) += v;
      };
      if (e.contains("mu")) {
        add(get_int(e, "mu", path), a);
      } else {
        require(pol.has_value(), path, "entry without 'mu' needs a top-level polarization");
        add(1, pol->xi() * a);
        add(2, pol->eta() * a);
      }
    }
  }

  try {
    if (kind == "single_photon") return {BeamState::single_photon(space, std::move(alpha)), pol};
    return {BeamState::coherent(space, std::move(alpha)), pol};
  } catch (const std::invalid_argument& e) {
    throw ParseError("/amplitudes", e.what());
  }
}

StateFile load_state(const std::filesystem::path& path, const ModeSpace& space) {
  return parse_state(read_text_file(path), space);
}

}  // namespace qpbeam
