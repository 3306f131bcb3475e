#include "ctorque/units.hpp"

#include <string>

#include "ctorque/errors.hpp"

namespace ctorque {

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::HbarCOverL:
      return "hbar_c_over_L";
    case Normalization::HbarOmegaP:
      return "hbar_omega_p";
  }
  return "unknown";
}

Normalization normalization_from_string(std::string_view s) {
  if (s == "hbar_c_over_L") return Normalization::HbarCOverL;
  if (s == "hbar_omega_p") return Normalization::HbarOmegaP;
  throw DomainError("unknown normalization tag '" + std::string(s) + "'");
}

double to_si(double tau_dimensionless, Normalization tag, const SiScale& scale) {
  switch (tag) {
    case Normalization::HbarCOverL: {
      if (!scale.separation_m) throw MissingScaleError("SI conversion needs the separation L in metres");
      if (!(*scale.separation_m > 0.0)) throw DomainError("separation must be positive");
      return tau_dimensionless * si::hbar_c / *scale.separation_m;
    }
    case Normalization::HbarOmegaP: {
      if (!scale.omega_p_ref) throw MissingScaleError("SI conversion needs omega_p_ref in rad/s");
      if (!(*scale.omega_p_ref > 0.0)) throw DomainError("omega_p_ref must be positive");
      return tau_dimensionless * si::hbar * *scale.omega_p_ref;
    }
  }
  throw DomainError("unknown normalization");
}

double natural_length_m(double omega_p_ref) {
  if (!(omega_p_ref > 0.0)) throw DomainError("omega_p_ref must be positive");
  return si::c / omega_p_ref;
}

}  // namespace ctorque
