#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

namespace ctorque {

/// One Lorentz oscillator along a principal axis,
///
///   eps(omega) = 1 + omega_p^2 / (omega_0^2 - omega^2 - i omega / tau),
///
/// with every frequency expressed in units of the reference omega_p_ref.
struct LorentzResonance {
  double resonance_freq = 1.0;   // omega_0
  double plasma_freq = 1.0;      // omega_p (oscillator strength)
  double inverse_lifetime = 0.0; // 1 / tau

  bool operator==(const LorentzResonance&) const = default;
};

/// Throws DomainError unless all three frequencies are finite and non-negative.
void validate(const LorentzResonance& res);

/// Principal-axis amplitudes at one imaginary frequency.
struct ReflectionPair {
  double r_x = 0.0;
  double r_y = 0.0;
  double delta_r = 0.0;  // r_x - r_y

  static ReflectionPair make(double r_x, double r_y) { return {r_x, r_y, r_x - r_y}; }
};

namespace mirror {

struct ConstantPair {
  double r_x = 0.0;
  double r_y = 0.0;
};

/// r_x = sign, r_y = 0.
struct PerfectPolarizer {
  int sign = 1;
};

/// r_x = r, r_y = 0.
struct LossyPolarizer {
  double r = 1.0;
};

struct SemiInfiniteLorentz {
  LorentzResonance x;
  LorentzResonance y;
};

/// Free-standing film of thickness d (units of c / omega_p_ref) in vacuum.
struct LorentzSlab {
  LorentzResonance x;
  LorentzResonance y;
  double thickness = 1.0;
};

struct TabulatedSample {
  double kappa = 0.0;
  double r_x = 0.0;
  double r_y = 0.0;
};

/// Measured or externally computed amplitudes on the imaginary axis,
/// linearly interpolated and never extrapolated.
class Tabulated {
 public:
  explicit Tabulated(std::vector<TabulatedSample> samples);

  const std::vector<TabulatedSample>& samples() const noexcept { return samples_; }
  double kappa_min() const noexcept { return samples_.front().kappa; }
  double kappa_max() const noexcept { return samples_.back().kappa; }

  ReflectionPair at(double kappa) const;

 private:
  std::vector<TabulatedSample> samples_;
};

}  // namespace mirror

using MirrorModel = std::variant<mirror::ConstantPair, mirror::PerfectPolarizer,
                                 mirror::LossyPolarizer, mirror::SemiInfiniteLorentz,
                                 mirror::LorentzSlab, mirror::Tabulated>;

/// Throws DomainError if the model's parameters violate its invariants.
void validate(const MirrorModel& m);

/// True when the model's amplitudes do not depend on kappa.
bool is_dispersionless(const MirrorModel& m);

/// Dielectric function continued to omega = i xi:
///   eps(i xi) = 1 + omega_p^2 / (omega_0^2 + xi^2 + xi / tau).
double eps_imaginary_axis(const LorentzResonance& res, double xi);

/// Normal-incidence amplitude (1 - sqrt(eps)) / (1 + sqrt(eps)) of a
/// vacuum / medium interface; tends to -1 for a perfect conductor.
double fresnel_semiinfinite(double eps);

/// Free-standing slab with multiple internal reflections summed:
///   r = r01 (1 - e^{-2 n kappa d}) / (1 - r01^2 e^{-2 n kappa d}),  n = sqrt(eps(i kappa)).
double slab_reflection(const LorentzResonance& res, double thickness, double kappa);

ReflectionPair reflection_pair(const MirrorModel& m, double kappa);

/// Reads whitespace-separated `kappa r_x r_y` lines; `#` starts a comment.
mirror::Tabulated read_tabulated(std::istream& in);
mirror::Tabulated read_tabulated(const std::filesystem::path& path);

}  // namespace ctorque
