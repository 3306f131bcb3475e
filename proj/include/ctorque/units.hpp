#pragma once

#include <optional>
#include <string_view>

namespace ctorque {

// Internally hbar = c = 1; frequencies are in units of a reference omega_p_ref
// and lengths in units of c / omega_p_ref.
namespace si {
inline constexpr double hbar = 1.054571817e-34;     // J s (exact, SI 2019)
inline constexpr double c = 299792458.0;            // m / s (exact)
inline constexpr double hbar_c = hbar * c;          // J m
}  // namespace si

/// Which dimensionless combination a torque value is expressed in.
enum class Normalization {
  HbarCOverL,   ///< tau * L / (hbar c); used when every mirror is dispersionless.
  HbarOmegaP,   ///< tau / (hbar omega_p_ref); used when any mirror is dispersive.
};

std::string_view to_string(Normalization n);
Normalization normalization_from_string(std::string_view s);

/// Physical scales needed to undo the normalization.
struct SiScale {
  std::optional<double> separation_m;     // L in metres
  std::optional<double> omega_p_ref;      // rad / s
};

/// Converts a dimensionless torque to N m. Throws MissingScaleError when the
/// scale required by `tag` is absent, DomainError when it is not positive.
double to_si(double tau_dimensionless, Normalization tag, const SiScale& scale);

/// Length unit c / omega_p_ref in metres.
double natural_length_m(double omega_p_ref);

}  // namespace ctorque
