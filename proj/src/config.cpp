#include "ctorque/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "ctorque/errors.hpp"

namespace ctorque::cli {

using nlohmann::json;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::AngleScan: return "angle-scan";
    case Command::DistanceScan: return "distance-scan";
    case Command::IntegrandDump: return "integrand-dump";
    case Command::Validate: return "validate";
    case Command::MaterialShow: return "material-show";
  }
  return "unknown";
}

std::string_view to_string(Spacing s) { return s == Spacing::Log ? "log" : "linear"; }
std::string_view to_string(Units u) { return u == Units::SI ? "si" : "natural"; }

std::vector<double> expand(const GridSpec& g) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(g.count, 0)));
  if (g.count == 1) {
    out.push_back(g.start);
    return out;
  }
  const double n = g.count - 1;
  for (int i = 0; i < g.count; ++i) {
    double x;
    if (i == 0) {
      x = g.start;
    } else if (i == g.count - 1) {
      x = g.stop;
    } else if (g.spacing == Spacing::Log) {
      const double la = std::log(g.start);
      const double lb = std::log(g.stop);
      x = std::exp(la + (lb - la) * (i / n));
    } else {
      x = g.start + (g.stop - g.start) * (i / n);
    }
    out.push_back(x);
  }
  return out;
}

GridSpec default_grid(Command c) {
  using std::numbers::pi;
  switch (c) {
    case Command::AngleScan: return {-pi, pi, 97, Spacing::Linear};
    case Command::DistanceScan: return {0.01, 100.0, 60, Spacing::Log};
    case Command::IntegrandDump:
    case Command::MaterialShow: return {0.01, 100.0, 50, Spacing::Log};
    case Command::Validate: return {0.01, 10.0, 20, Spacing::Log};
  }
  return {};
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError("config error at '" + path + "': " + msg);
}

// Reads keys from one JSON object and rejects anything it was not asked about.
class StrictObject {
 public:
  StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected a JSON object");
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::optional<double> number(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number()) fail(key_path(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(key_path(key), "must be finite");
    return x;
  }

  double required_number(const std::string& key) {
    auto x = number(key);
    if (!x) fail(key_path(key), "missing required key");
    return *x;
  }

  std::optional<long long> integer(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_number_integer()) fail(key_path(key), "expected an integer");
    return v->get<long long>();
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) fail(key_path(key), "expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(key_path(it.key()), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

LorentzResonance parse_resonance(const json& j, const std::string& path) {
  StrictObject o(j, path);
  LorentzResonance r;
  r.resonance_freq = o.required_number("omega_0");
  r.plasma_freq = o.required_number("omega_p");
  r.inverse_lifetime = o.number("inv_tau").value_or(0.0);
  o.finish();
  try {
    validate(r);
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  return r;
}

json resonance_json(const LorentzResonance& r) {
  return {{"omega_0", r.resonance_freq}, {"omega_p", r.plasma_freq}, {"inv_tau", r.inverse_lifetime}};
}

struct ParsedMirror {
  MirrorModel model;
  json resolved;
};

ParsedMirror parse_mirror(const json& j, const std::string& path, const std::filesystem::path& base_dir) {
  StrictObject o(j, path);
  const auto type = o.string("type");
  if (!type) fail(o.key_path("type"), "missing required key");

  ParsedMirror out;
  json& res = out.resolved;
  res["type"] = *type;
  if (*type == "perfect_polarizer") {
    const long long sign = o.integer("sign").value_or(1);
    if (sign != 1 && sign != -1) fail(o.key_path("sign"), "must be +1 or -1");
    out.model = mirror::PerfectPolarizer{static_cast<int>(sign)};
    res["sign"] = sign;
  } else if (*type == "lossy") {
    const double r = o.required_number("r");
    out.model = mirror::LossyPolarizer{r};
    res["r"] = r;
  } else if (*type == "constant") {
    const double rx = o.required_number("r_x");
    const double ry = o.required_number("r_y");
    out.model = mirror::ConstantPair{rx, ry};
    res["r_x"] = rx;
    res["r_y"] = ry;
  } else if (*type == "lorentz" || *type == "slab") {
    const json* x = o.find("x");
    const json* y = o.find("y");
    if (!x) fail(o.key_path("x"), "missing required key");
    if (!y) fail(o.key_path("y"), "missing required key");
    const auto rx = parse_resonance(*x, o.key_path("x"));
    const auto ry = parse_resonance(*y, o.key_path("y"));
    res["x"] = resonance_json(rx);
    res["y"] = resonance_json(ry);
    if (*type == "lorentz") {
      out.model = mirror::SemiInfiniteLorentz{rx, ry};
    } else {
      const double d = o.required_number("thickness");
      out.model = mirror::LorentzSlab{rx, ry, d};
      res["thickness"] = d;
    }
  } else if (*type == "tabulated") {
    const auto file = o.string("file");
    const json* samples = o.find("samples");
    if (file.has_value() == (samples != nullptr)) fail(path, "tabulated mirror needs exactly one of 'file' or 'samples'");
    try {
      if (file) {
        std::filesystem::path p(*file);
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        out.model = read_tabulated(p);
        res["file"] = *file;
      } else {
        if (!samples->is_array()) fail(o.key_path("samples"), "expected an array of [kappa, r_x, r_y]");
        std::vector<mirror::TabulatedSample> rows;
        for (const auto& row : *samples) {
          if (!row.is_array() || row.size() != 3 || !row[0].is_number() || !row[1].is_number() ||
              !row[2].is_number()) {
            fail(o.key_path("samples"), "each sample must be [kappa, r_x, r_y]");
          }
          rows.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
        }
        out.model = mirror::Tabulated(std::move(rows));
        res["samples"] = *samples;
      }
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
  } else {
    fail(o.key_path("type"), "unknown mirror type '" + *type + "'");
  }
  o.finish();
  try {
    validate(out.model);
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  return out;
}

Command parse_command(const std::string& s, const std::string& path) {
  for (Command c : {Command::AngleScan, Command::DistanceScan, Command::IntegrandDump, Command::Validate,
                    Command::MaterialShow}) {
    if (s == to_string(c)) return c;
  }
  fail(path, "unknown command '" + s + "'");
}

}  // namespace

RunConfig parse_config(std::string_view document, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }

  StrictObject o(root, "");
  RunConfig cfg;
  json& resolved = cfg.resolved;

  const auto command = o.string("command");
  if (!command) fail("command", "missing required key");
  cfg.command = parse_command(*command, "command");
  resolved["command"] = *command;

  const json* m1 = o.find("mirror1");
  const json* m2 = o.find("mirror2");
  if ((m1 == nullptr) != (m2 == nullptr)) fail(m1 ? "mirror2" : "mirror1", "both mirrors must be given");
  if (m1) {
    auto p1 = parse_mirror(*m1, "mirror1", base_dir);
    auto p2 = parse_mirror(*m2, "mirror2", base_dir);
    cfg.cavity.mirror1 = std::move(p1.model);
    cfg.cavity.mirror2 = std::move(p2.model);
    resolved["mirror1"] = std::move(p1.resolved);
    resolved["mirror2"] = std::move(p2.resolved);
    cfg.has_mirrors = true;
  } else if (cfg.command != Command::Validate) {
    fail("mirror1", "missing required key");
  }

  cfg.cavity.relative_angle = o.number("gamma").value_or(std::numbers::pi / 4);
  cfg.cavity.separation = o.number("L").value_or(1.0);
  if (!(cfg.cavity.separation > 0.0)) fail("L", "must be > 0");
  resolved["gamma"] = cfg.cavity.relative_angle;
  resolved["L"] = cfg.cavity.separation;

  cfg.grid = default_grid(cfg.command);
  if (const json* g = o.find("grid")) {
    StrictObject go(*g, "grid");
    if (auto v = go.number("start")) cfg.grid.start = *v;
    if (auto v = go.number("stop")) cfg.grid.stop = *v;
    if (auto v = go.integer("count")) {
      if (*v < 1 || *v > 10'000'000) fail("grid.count", "must be between 1 and 10000000");
      cfg.grid.count = static_cast<int>(*v);
    }
    if (auto v = go.string("spacing")) {
      if (*v == "linear") {
        cfg.grid.spacing = Spacing::Linear;
      } else if (*v == "log") {
        cfg.grid.spacing = Spacing::Log;
      } else {
        fail("grid.spacing", "must be 'linear' or 'log'");
      }
    }
    go.finish();
  }
  if (cfg.grid.spacing == Spacing::Log && !(cfg.grid.start > 0.0 && cfg.grid.stop > 0.0)) {
    fail("grid", "log spacing needs positive start and stop");
  }
  if (cfg.command != Command::AngleScan && !(cfg.grid.start > 0.0 && cfg.grid.stop > 0.0)) {
    fail("grid", std::string(to_string(cfg.command)) + " needs a strictly positive grid");
  }
  resolved["grid"] = {{"start", cfg.grid.start},
                      {"stop", cfg.grid.stop},
                      {"count", cfg.grid.count},
                      {"spacing", to_string(cfg.grid.spacing)}};

  if (const json* q = o.find("quadrature")) {
    StrictObject qo(*q, "quadrature");
    if (auto v = qo.number("rel_tol")) cfg.quadrature.rel_tol = *v;
    if (auto v = qo.number("abs_tol")) cfg.quadrature.abs_tol = *v;
    if (auto v = qo.integer("max_subdivisions")) {
      if (*v < 1 || *v > 1'000'000) fail("quadrature.max_subdivisions", "must be between 1 and 1000000");
      cfg.quadrature.max_subdivisions = static_cast<int>(*v);
    }
    qo.finish();
  }
  try {
    validate(cfg.quadrature);
  } catch (const DomainError& e) {
    fail("quadrature", e.what());
  }
  resolved["quadrature"] = {{"rel_tol", cfg.quadrature.rel_tol},
                            {"abs_tol", cfg.quadrature.abs_tol},
                            {"max_subdivisions", cfg.quadrature.max_subdivisions}};

  if (auto u = o.string("units")) {
    if (*u == "natural") {
      cfg.units = Units::Natural;
    } else if (*u == "si") {
      cfg.units = Units::SI;
    } else {
      fail("units", "must be 'natural' or 'si'");
    }
  }
  resolved["units"] = to_string(cfg.units);
  cfg.omega_p_ref_si = o.number("omega_p_ref_si");
  if (cfg.omega_p_ref_si && !(*cfg.omega_p_ref_si > 0.0)) fail("omega_p_ref_si", "must be > 0");
  if (cfg.units == Units::SI && !cfg.omega_p_ref_si) fail("omega_p_ref_si", "required when units = si");
  if (cfg.omega_p_ref_si) resolved["omega_p_ref_si"] = *cfg.omega_p_ref_si;

  cfg.output = o.string("output").value_or("");

  o.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace ctorque::cli
