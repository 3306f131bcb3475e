#include "ctorque/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "ctorque/errors.hpp"
#include "ctorque/greens_oracle.hpp"
#include "ctorque/units.hpp"

namespace ctorque::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string error_status(const std::string& msg) { return "error: " + msg; }

Table start_table(const RunConfig& cfg) {
  Table t;
  t.preamble.push_back("ctorque " + std::string(to_string(cfg.command)));
  t.preamble.push_back("config: " + cfg.resolved.dump());
  t.preamble.push_back("units: " + std::string(to_string(cfg.units)) +
                       (cfg.omega_p_ref_si ? ", omega_p_ref_si = " + format_number(*cfg.omega_p_ref_si) + " rad/s"
                                           : std::string()));
  return t;
}

void note_window(Table& t, const std::vector<ScanRow>& rows) {
  for (const auto& r : rows) {
    if (r.result && r.result->kappa_window) {
      t.preamble.push_back("kappa_window: tabulated data restricts the integral to kappa in [" +
                           format_number(r.result->kappa_window->first) + ", " +
                           format_number(r.result->kappa_window->second) + "]");
      return;
    }
  }
}

RunOutcome angle_scan(const RunConfig& cfg) {
  RunOutcome out{start_table(cfg)};
  Table& t = out.table;
  const Normalization norm = normalization_for(cfg.cavity);
  t.preamble.push_back("normalization: " + std::string(to_string(norm)) +
                       (norm == Normalization::HbarCOverL ? " (tau = tau_z L / (hbar c))"
                                                          : " (tau = tau_z / (hbar omega_p_ref))"));
  t.preamble.push_back("L = " + format_number(cfg.cavity.separation));

  const bool si = cfg.units == Units::SI;
  t.columns = {"gamma", "tau", "error_estimate", "evaluations"};
  if (si) t.columns.push_back("tau_si_Nm");
  t.columns.push_back("status");

  const auto grid = expand(cfg.grid);
  const auto rows = scan_angle(cfg.cavity, grid, cfg.quadrature);
  note_window(t, rows);

  SiScale scale;
  if (si) {
    scale.omega_p_ref = *cfg.omega_p_ref_si;
    scale.separation_m = cfg.cavity.separation * natural_length_m(*cfg.omega_p_ref_si);
  }
  for (const auto& r : rows) {
    std::vector<Cell> row{r.abscissa};
    if (r.ok()) {
      row.insert(row.end(), {r.result->tau_dimensionless, r.result->error_estimate,
                             static_cast<double>(r.result->evaluations)});
      if (si) row.emplace_back(to_si(r.result->tau_dimensionless, r.result->normalization, scale));
      row.emplace_back(std::string("ok"));
    } else {
      row.insert(row.end(), {kNaN, kNaN, kNaN});
      if (si) row.emplace_back(kNaN);
      row.emplace_back(error_status(r.error));
      out.success = false;
    }
    t.rows.push_back(std::move(row));
  }
  return out;
}

RunOutcome distance_scan(const RunConfig& cfg) {
  RunOutcome out{start_table(cfg)};
  Table& t = out.table;
  t.preamble.push_back("tau in units of hbar c / l (l = length unit of L; hbar omega_p_ref when l = c / omega_p_ref)");
  t.preamble.push_back("tau_times_L = tau_z L / (hbar c)");
  t.preamble.push_back("gamma = " + format_number(cfg.cavity.relative_angle));

  const bool si = cfg.units == Units::SI;
  t.columns = {"L", "tau", "tau_times_L", "error_estimate", "evaluations"};
  if (si) t.columns.push_back("tau_si_Nm");
  t.columns.push_back("status");

  const auto grid = expand(cfg.grid);
  const auto rows = scan_distance(cfg.cavity, grid, cfg.quadrature);
  note_window(t, rows);

  for (const auto& r : rows) {
    std::vector<Cell> row{r.abscissa};
    if (r.ok()) {
      const double tau = distance_scan_tau(r);
      const double err = r.result->normalization == Normalization::HbarCOverL
                             ? r.result->error_estimate / r.abscissa
                             : r.result->error_estimate;
      row.insert(row.end(), {tau, tau_times_separation(r), err, static_cast<double>(r.result->evaluations)});
      if (si) row.emplace_back(to_si(tau, Normalization::HbarOmegaP, SiScale{std::nullopt, cfg.omega_p_ref_si}));
      row.emplace_back(std::string("ok"));
    } else {
      row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN});
      if (si) row.emplace_back(kNaN);
      row.emplace_back(error_status(r.error));
      out.success = false;
    }
    t.rows.push_back(std::move(row));
  }
  return out;
}

RunOutcome integrand_dump(const RunConfig& cfg) {
  RunOutcome out{start_table(cfg)};
  Table& t = out.table;
  t.preamble.push_back("integrand F(kappa); tau_z = -(hbar c / 2 pi) * integral F dkappa");
  t.columns = {"kappa", "integrand", "r1_x", "r1_y", "r2_x", "r2_y", "status"};
  for (double kappa : expand(cfg.grid)) {
    std::vector<Cell> row{kappa};
    try {
      const double f = integrand(kappa, cfg.cavity);
      const auto p1 = reflection_pair(cfg.cavity.mirror1, kappa);
      const auto p2 = reflection_pair(cfg.cavity.mirror2, kappa);
      row.insert(row.end(), {f, p1.r_x, p1.r_y, p2.r_x, p2.r_y, std::string("ok")});
    } catch (const Error& e) {
      row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN, kNaN, error_status(e.what())});
      out.success = false;
    }
    t.rows.push_back(std::move(row));
  }
  return out;
}

// eps(i kappa) along both axes, or NaN for models without a dielectric function.
std::pair<double, double> eps_pair(const MirrorModel& m, double kappa) {
  if (const auto* l = std::get_if<mirror::SemiInfiniteLorentz>(&m)) {
    return {eps_imaginary_axis(l->x, kappa), eps_imaginary_axis(l->y, kappa)};
  }
  if (const auto* s = std::get_if<mirror::LorentzSlab>(&m)) {
    return {eps_imaginary_axis(s->x, kappa), eps_imaginary_axis(s->y, kappa)};
  }
  return {kNaN, kNaN};
}

RunOutcome material_show(const RunConfig& cfg) {
  RunOutcome out{start_table(cfg)};
  Table& t = out.table;
  t.preamble.push_back("reflection amplitudes on the imaginary axis, r = (1 - sqrt(eps)) / (1 + sqrt(eps)) convention");
  t.columns = {"kappa", "eps1_x", "eps1_y", "r1_x", "r1_y", "delta_r1",
               "eps2_x", "eps2_y", "r2_x", "r2_y", "delta_r2", "status"};
  for (double kappa : expand(cfg.grid)) {
    std::vector<Cell> row{kappa};
    try {
      const auto e1 = eps_pair(cfg.cavity.mirror1, kappa);
      const auto e2 = eps_pair(cfg.cavity.mirror2, kappa);
      const auto p1 = reflection_pair(cfg.cavity.mirror1, kappa);
      const auto p2 = reflection_pair(cfg.cavity.mirror2, kappa);
      row.insert(row.end(), {e1.first, e1.second, p1.r_x, p1.r_y, p1.delta_r, e2.first, e2.second, p2.r_x, p2.r_y,
                             p2.delta_r, std::string("ok")});
    } catch (const Error& e) {
      row.insert(row.end(), 10, Cell{kNaN});
      row.emplace_back(error_status(e.what()));
      out.success = false;
    }
    t.rows.push_back(std::move(row));
  }
  return out;
}

double relative_deviation(double kernel, double integrand, std::optional<double> c0) {
  if (!c0) return kernel == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(kernel / *c0 - integrand) / std::max(std::abs(integrand), std::numeric_limits<double>::min());
}

RunOutcome validate_cavity(const RunConfig& cfg) {
  RunOutcome out{start_table(cfg)};
  Table& t = out.table;
  t.columns = {"kappa_L", "integrand", "kernel", "deviation", "z_spread", "status"};
  const double L = cfg.cavity.separation;
  std::vector<double> kappas;
  for (double x : expand(cfg.grid)) kappas.push_back(x / L);

  greens::ValidationReport report;
  try {
    report = greens::validate(cfg.cavity, kappas);
  } catch (const Error& e) {
    t.preamble.push_back(error_status(e.what()));
    out.success = false;
    return out;
  }
  t.preamble.push_back("c0 = " + (report.c0 ? format_number(*report.c0) : std::string("undetermined")));
  t.preamble.push_back("max_deviation = " + format_number(report.max_deviation) +
                       " (threshold " + format_number(greens::kValidationThreshold) + ")");
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    std::vector<Cell> row{kappas[i] * L, report.integrand[i], report.kernel[i],
                          relative_deviation(report.kernel[i], report.integrand[i], report.c0)};
    try {
      row.emplace_back(greens::kernel_z_spread(kappas[i], cfg.cavity));
      row.emplace_back(std::string("ok"));
    } catch (const Error& e) {
      row.emplace_back(kNaN);
      row.emplace_back(error_status(e.what()));
      out.success = false;
    }
    t.rows.push_back(std::move(row));
  }
  if (!(report.max_deviation <= greens::kValidationThreshold)) out.success = false;
  return out;
}

RunOutcome validate_lattice(const RunConfig& cfg) {
  RunOutcome out{start_table(cfg)};
  Table& t = out.table;
  const auto cases = greens::reference_lattice();
  const auto report = greens::validate_lattice(cases);
  t.preamble.push_back("reference lattice: gamma x kappa L x mirror family, L = 1");
  t.preamble.push_back("c0 = " + (report.c0 ? format_number(*report.c0) : std::string("undetermined")));
  t.preamble.push_back("max_deviation = " + format_number(report.max_deviation) + " (threshold " +
                       format_number(greens::kValidationThreshold) + ")");
  t.preamble.push_back("max_c0_spread = " + format_number(report.max_c0_spread));
  t.preamble.push_back("max_z_spread = " + format_number(report.max_z_spread) + " (threshold 1e-09)");
  t.columns = {"family", "gamma", "kappa_L", "integrand", "kernel", "deviation", "z_spread", "status"};
  for (const auto& c : report.cases) {
    const auto& src = cases[c.index];
    for (std::size_t i = 0; i < src.kappa_samples.size(); ++i) {
      std::vector<Cell> row{src.family, src.cavity.relative_angle, src.kappa_samples[i] * src.cavity.separation};
      if (c.error.empty()) {
        const double f = c.validation.integrand[i];
        const double k = c.validation.kernel[i];
        row.insert(row.end(), {f, k, relative_deviation(k, f, report.c0), c.z_spread, std::string("ok")});
      } else {
        row.insert(row.end(), {kNaN, kNaN, kNaN, kNaN, error_status(c.error)});
      }
      t.rows.push_back(std::move(row));
    }
  }
  out.success = report.ok;
  return out;
}

}  // namespace

RunOutcome run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::AngleScan: return angle_scan(cfg);
    case Command::DistanceScan: return distance_scan(cfg);
    case Command::IntegrandDump: return integrand_dump(cfg);
    case Command::MaterialShow: return material_show(cfg);
    case Command::Validate: return cfg.has_mirrors ? validate_cavity(cfg) : validate_lattice(cfg);
  }
  throw ConfigError("unknown command");
}

}  // namespace ctorque::cli
