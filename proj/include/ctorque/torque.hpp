#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ctorque/material.hpp"
#include "ctorque/units.hpp"

namespace ctorque {

/// Two planar walls a distance L apart whose principal axes are rotated by
/// `relative_angle` with respect to each other. Mirror 2 is the one the torque
/// acts on.
struct CavityConfig {
  double separation = 1.0;      // L, units of c / omega_p_ref (or arbitrary for dispersionless mirrors)
  double relative_angle = 0.0;  // gamma, radians; any real value, period pi
  MirrorModel mirror1 = mirror::PerfectPolarizer{};
  MirrorModel mirror2 = mirror::PerfectPolarizer{};
};

/// Throws DomainError if L <= 0, gamma is not finite or a mirror is invalid.
void validate(const CavityConfig& cfg);

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 200;
};

void validate(const QuadratureSettings& q);

struct TorqueResult {
  double tau_dimensionless = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
  Normalization normalization = Normalization::HbarCOverL;
  /// Set when tabulated mirrors restrict the integral to the kappa range
  /// their data covers.
  std::optional<std::pair<double, double>> kappa_window;
};

/// Denominators with magnitude below this are treated as singular.
inline constexpr double kDenominatorGuard = 1e-300;

/// Imaginary-axis torque integrand
///
///   F(kappa) = dr1 dr2 sin(2 gamma) e^{-2 kappa L}
///              / [dr1 dr2 sin^2(gamma) e^{-2 kappa L}
///                 + (1 - r1x r2x e^{-2 kappa L}) (1 - r1y r2y e^{-2 kappa L})],
///
/// such that tau_z = -(hbar c / 2 pi) * integral_0^inf F dkappa.
double integrand(double kappa, const CavityConfig& cfg);

/// Zero-temperature torque on mirror 2. The kappa integral is carried out on
/// u = e^{-2 kappa L} in (0, 1], where the integrand is bounded for
/// dispersionless mirrors. Throws NonConvergenceError when the subdivision
/// budget runs out.
TorqueResult torque(const CavityConfig& cfg, const QuadratureSettings& q = {});

/// Normalization torque() reports for this pair of mirrors.
Normalization normalization_for(const CavityConfig& cfg);

/// tau L / (hbar c) = tan(gamma) ln(sin^2 gamma) / (2 pi) for r_x = +-1, r_y = 0 on
/// both walls; removable points gamma = 0, pi/2 (mod pi) return 0.
/// The returned value is tau in units of hbar c divided by the given L.
double torque_perfect_polarizers(double gamma, double separation = 1.0);

/// tau L / (hbar c) = tan(gamma) ln(1 - |r|^2 cos^2 gamma) / (2 pi) for two lossy
/// polarizers with the same |r|. Throws SingularArgumentError at |r| = 1, gamma = 0 (mod pi).
double torque_lossy(double gamma, double separation, double r);

/// Weak-reflection limit -|r|^2 sin(2 gamma) / (4 pi L).
double small_r_approx(double gamma, double separation, double r);

struct ScanRow {
  double abscissa = 0.0;
  std::optional<TorqueResult> result;
  std::string error;  // empty on success

  bool ok() const noexcept { return result.has_value(); }
};

/// One torque() per angle; `base.relative_angle` is ignored.
std::vector<ScanRow> scan_angle(const CavityConfig& base, std::span<const double> angles,
                                const QuadratureSettings& q = {});

/// One torque() per separation; `base.separation` is ignored.
std::vector<ScanRow> scan_distance(const CavityConfig& base, std::span<const double> separations,
                                   const QuadratureSettings& q = {});

/// Torque of a distance-scan row in units of hbar c / l, where l is the
/// length unit of the separation (equal to hbar omega_p_ref when l = c / omega_p_ref).
/// Dispersionless rows are divided by L, so tau(2L) = tau(L) / 2 holds in this column.
double distance_scan_tau(const ScanRow& row);

/// distance_scan_tau(row) * L, i.e. tau L / (hbar c).
double tau_times_separation(const ScanRow& row);

}  // namespace ctorque
