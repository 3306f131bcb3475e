#include "ctorque/torque.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "ctorque/errors.hpp"
#include "ctorque/quadrature.hpp"

namespace ctorque {

namespace {

using std::numbers::pi;

struct AngleFactors {
  double sin2g;
  double sinsq;

  explicit AngleFactors(double gamma) {
    const double s = std::sin(gamma);
    sin2g = std::sin(2.0 * gamma);
    sinsq = s * s;
  }
};

// F / e^{-2 kappa L}, with e = e^{-2 kappa L} supplied by the caller.
double reduced_integrand(const ReflectionPair& p1, const ReflectionPair& p2, const AngleFactors& a,
                         double e) {
  const double anisotropy = p1.delta_r * p2.delta_r;
  const double numerator = anisotropy * a.sin2g;
  if (numerator == 0.0) return 0.0;
  const double denominator =
      anisotropy * a.sinsq * e + (1.0 - p1.r_x * p2.r_x * e) * (1.0 - p1.r_y * p2.r_y * e);
  if (!(std::abs(denominator) >= kDenominatorGuard)) {
    std::ostringstream os;
    os << "torque integrand denominator " << denominator << " below guard at e^{-2 kappa L} = " << e;
    throw SingularDenominatorError(os.str());
  }
  return numerator / denominator;
}

void require_positive_separation(double separation) {
  if (!(separation > 0.0) || !std::isfinite(separation)) throw DomainError("separation L must be finite and > 0");
}

// Intersection of the kappa ranges covered by any tabulated mirrors.
std::optional<std::pair<double, double>> tabulated_window(const CavityConfig& cfg) {
  std::optional<std::pair<double, double>> window;
  for (const MirrorModel* m : {&cfg.mirror1, &cfg.mirror2}) {
    if (const auto* t = std::get_if<mirror::Tabulated>(m)) {
      if (!window) {
        window = std::pair{t->kappa_min(), t->kappa_max()};
      } else {
        window->first = std::max(window->first, t->kappa_min());
        window->second = std::min(window->second, t->kappa_max());
      }
    }
  }
  if (window && !(window->first < window->second)) {
    throw OutOfRangeError("tabulated mirrors have no overlapping kappa range");
  }
  return window;
}

}  // namespace

void validate(const CavityConfig& cfg) {
  require_positive_separation(cfg.separation);
  if (!std::isfinite(cfg.relative_angle)) throw DomainError("relative angle must be finite");
  validate(cfg.mirror1);
  validate(cfg.mirror2);
}

void validate(const QuadratureSettings& q) {
  if (!(q.rel_tol > 0.0)) throw DomainError("quadrature rel_tol must be > 0");
  if (!(q.abs_tol >= 0.0)) throw DomainError("quadrature abs_tol must be >= 0");
  if (q.max_subdivisions < 1) throw DomainError("quadrature max_subdivisions must be >= 1");
}

Normalization normalization_for(const CavityConfig& cfg) {
  return is_dispersionless(cfg.mirror1) && is_dispersionless(cfg.mirror2) ? Normalization::HbarCOverL
                                                                          : Normalization::HbarOmegaP;
}

double integrand(double kappa, const CavityConfig& cfg) {
  if (!(kappa > 0.0)) throw DomainError("integrand needs kappa > 0");
  require_positive_separation(cfg.separation);
  const double e = std::exp(-2.0 * kappa * cfg.separation);
  const AngleFactors angle(cfg.relative_angle);
  return e * reduced_integrand(reflection_pair(cfg.mirror1, kappa), reflection_pair(cfg.mirror2, kappa),
                               angle, e);
}

TorqueResult torque(const CavityConfig& cfg, const QuadratureSettings& q) {
  validate(cfg);
  validate(q);

  const double L = cfg.separation;
  const AngleFactors angle(cfg.relative_angle);
  const Normalization norm = normalization_for(cfg);

  TorqueResult result;
  result.normalization = norm;

  // integral_0^inf F dkappa = (1 / 2L) integral_0^1 (F / u) du with u = e^{-2 kappa L}.
  double u_lo = 0.0;
  double u_hi = 1.0;
  std::function<double(double)> f;
  double scale = 0.0;  // tau_dimensionless = scale * integral (F / u) du

  if (norm == Normalization::HbarCOverL) {
    const ReflectionPair p1 = reflection_pair(cfg.mirror1, 1.0);
    const ReflectionPair p2 = reflection_pair(cfg.mirror2, 1.0);
    f = [p1, p2, angle](double u) { return reduced_integrand(p1, p2, angle, u); };
    scale = -1.0 / (4.0 * pi);
  } else {
    result.kappa_window = tabulated_window(cfg);
    double k_lo = std::numeric_limits<double>::min();
    double k_hi = std::numeric_limits<double>::infinity();
    if (result.kappa_window) {
      std::tie(k_lo, k_hi) = *result.kappa_window;
      k_lo = std::max(k_lo, std::numeric_limits<double>::min());
      u_lo = std::exp(-2.0 * k_hi * L);
      u_hi = std::exp(-2.0 * k_lo * L);
    }
    f = [&cfg, angle, L, k_lo, k_hi](double u) {
      const double kappa = std::clamp(-std::log(u) / (2.0 * L), k_lo, k_hi);
      return reduced_integrand(reflection_pair(cfg.mirror1, kappa), reflection_pair(cfg.mirror2, kappa),
                               angle, u);
    };
    scale = -1.0 / (4.0 * pi * L);
  }

  const double abs_scale = std::abs(scale);
  const auto est = quadrature::integrate(f, u_lo, u_hi, q.rel_tol, q.abs_tol / abs_scale, q.max_subdivisions);

  result.tau_dimensionless = scale * est.value;
  result.error_estimate = abs_scale * est.abs_error;
  result.evaluations = est.evaluations;
  if (!est.converged) {
    std::ostringstream os;
    os << "torque quadrature did not converge within " << q.max_subdivisions
       << " subdivisions (tau ~ " << result.tau_dimensionless << ", error ~ " << result.error_estimate << ")";
    throw NonConvergenceError(os.str(), result.tau_dimensionless, result.error_estimate);
  }
  return result;
}

double torque_perfect_polarizers(double gamma, double separation) {
  require_positive_separation(separation);
  const double s = std::sin(gamma);
  const double c = std::cos(gamma);
  if (s == 0.0 || c == 0.0) return 0.0;
  // tan(gamma) ln(sin^2 gamma) = 2 tan(gamma) ln|sin gamma|; avoids underflow of sin^2.
  return (s / c) * std::log(std::abs(s)) / (pi * separation);
}

double torque_lossy(double gamma, double separation, double r) {
  require_positive_separation(separation);
  if (!(std::abs(r) <= 1.0)) throw DomainError("torque_lossy needs |r| <= 1");
  const double s = std::sin(gamma);
  const double c = std::cos(gamma);
  if (c == 0.0 || s == 0.0) {
    if (s == 0.0 && std::abs(r) == 1.0) {
      throw SingularArgumentError("torque_lossy is singular at |r| = 1, gamma = 0");
    }
    return 0.0;
  }
  const double r2 = r * r;
  const double x = r2 * c * c;
  double log_term;
  if (x < 0.5) {
    log_term = std::log1p(-x);
  } else {
    // 1 - r^2 cos^2 = (1 - |r|)(1 + |r|) + r^2 sin^2, exact for |r| = 1.
    const double a = std::abs(r);
    const double arg = (1.0 - a) * (1.0 + a) + r2 * s * s;
    log_term = arg > 0.0 ? std::log(arg) : 2.0 * std::log(std::abs(r * s));
  }
  return (s / c) * log_term / (2.0 * pi * separation);
}

double small_r_approx(double gamma, double separation, double r) {
  require_positive_separation(separation);
  return -r * r * std::sin(2.0 * gamma) / (4.0 * pi * separation);
}

namespace {

template <class Setter>
std::vector<ScanRow> scan(const CavityConfig& base, std::span<const double> grid, const QuadratureSettings& q,
                          Setter set) {
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    ScanRow row;
    row.abscissa = x;
    CavityConfig cfg = base;
    set(cfg, x);
    try {
      row.result = torque(cfg, q);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<ScanRow> scan_angle(const CavityConfig& base, std::span<const double> angles,
                                const QuadratureSettings& q) {
  if (angles.empty()) throw DomainError("angle grid must not be empty");
  return scan(base, angles, q, [](CavityConfig& c, double g) { c.relative_angle = g; });
}

std::vector<ScanRow> scan_distance(const CavityConfig& base, std::span<const double> separations,
                                   const QuadratureSettings& q) {
  if (separations.empty()) throw DomainError("separation grid must not be empty");
  for (double L : separations) require_positive_separation(L);
  return scan(base, separations, q, [](CavityConfig& c, double L) { c.separation = L; });
}

double distance_scan_tau(const ScanRow& row) {
  if (!row.result) throw DomainError("scan row has no result: " + row.error);
  return row.result->normalization == Normalization::HbarCOverL ? row.result->tau_dimensionless / row.abscissa
                                                                : row.result->tau_dimensionless;
}

double tau_times_separation(const ScanRow& row) { return distance_scan_tau(row) * row.abscissa; }

}  // namespace ctorque
