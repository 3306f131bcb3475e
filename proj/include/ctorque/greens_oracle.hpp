#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "ctorque/mat2.hpp"
#include "ctorque/material.hpp"
#include "ctorque/torque.hpp"

// Independent reconstruction of the torque integrand from the cavity Green's
// function. Arithmetic is carried out with 50 significant digits: the
// off-diagonal part of G that carries the torque is O(dr1 dr2 e^{-2 kappa L})
// relative to its diagonal, about 1e-18 for dichroic mirrors at kappa L = 10.
namespace ctorque::greens {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                           boost::multiprecision::et_off>;
using Complex = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<boost::multiprecision::cpp_bin_float<50>>,
    boost::multiprecision::et_off>;
using CMat = Mat2<Complex>;

/// Homogeneous solutions of (d^2/dz^2 + q^2) phi = 0 in the cavity (z1, z2),
/// evaluated at q = i kappa. Columns of u satisfy the boundary condition of
/// mirror 2 at z2, columns of v that of mirror 1 at z1. Each is written in its
/// own mirror's principal axes and rotated by +gamma/2 (u) or -gamma/2 (v)
/// acting on the field index only.
class HomogeneousSolutions {
 public:
  HomogeneousSolutions(Complex q, Real z1, Real z2, Real gamma, const ReflectionPair& mirror1,
                       const ReflectionPair& mirror2);

  Complex q() const noexcept { return q_; }
  Real z1() const noexcept { return z1_; }
  Real z2() const noexcept { return z2_; }

  CMat u(Real z) const;
  CMat du(Real z) const;
  CMat d2u(Real z) const;
  CMat v(Real z) const;
  CMat dv(Real z) const;
  CMat d2v(Real z) const;

  /// Unrotated solutions in the mirrors' own principal axes.
  CMat u0(Real z) const;
  CMat v0(Real z) const;

 private:
  Complex q_;
  Real z1_;
  Real z2_;
  CMat rot_u_;  // R(+gamma/2)
  CMat rot_v_;  // R(-gamma/2)
  CMat refl1_;
  CMat refl2_;
};

/// Mirror 1 at z = 0, mirror 2 at z = L.
HomogeneousSolutions build_solutions(double kappa, const CavityConfig& cfg);

struct GreensEvaluation {
  CMat g;
  CMat dg_dz;
  CMat dg_dzprime;
};

/// Which piecewise branch of G to use. `Auto` picks z >= z' -> Right.
enum class Branch { Auto, Right, Left };

/// Determinant magnitude below which a 2x2 bracket counts as singular.
inline const Real kDeterminantGuard{1e-280};

/// G(z, z') = u(z) [u'(z') - v'(z') v^{-1}(z') u(z')]^{-1}           for z > z',
///          = -v(z) [v'(z') - u'(z') u^{-1}(z') v(z')]^{-1}          for z < z',
/// with every bracket factor evaluated at z'. Derivatives are analytic.
GreensEvaluation greens_matrix(const HomogeneousSolutions& sol, Real z, Real zprime,
                               Branch branch = Branch::Auto);
GreensEvaluation greens_matrix(double z, double zprime, double kappa, const CavityConfig& cfg,
                               Branch branch = Branch::Auto);

/// K(kappa; z) = (d/dz' - d/dz)[G_xy(z, z') - G_yx(z, z')] at z' -> z.
/// Requires z at least 1e-6 L away from both walls.
double oracle_integrand(double kappa, const CavityConfig& cfg, double z, Branch branch = Branch::Auto);

/// K / F for every configuration; fixed by the universality check.
inline constexpr double kUniversalConstant = -1.0;

/// Acceptance threshold for both the integrand deviation and c0 consistency.
inline constexpr double kValidationThreshold = 1e-8;

struct ValidationReport {
  double max_deviation = 0.0;
  std::optional<double> c0;  // empty when every sample has F == 0
  std::vector<double> kernel;
  std::vector<double> integrand;
};

/// Fixes c0 = K/F from the first sample with F != 0 (and checks it against the
/// second such sample), then returns max |K / c0 - F| / max(|F|, tiny) over
/// the samples, with K evaluated at the cavity midpoint.
/// Throws InconsistentConstantError when the two estimates of c0 disagree
/// beyond kValidationThreshold.
ValidationReport validate(const CavityConfig& cfg, std::span<const double> kappa_samples);

/// max over `count` interior points of |K(z) - K(z_mid)| / |K(z_mid)|; 0 when K(z_mid) = 0.
double kernel_z_spread(double kappa, const CavityConfig& cfg, int count = 10);

/// One cell of the reference lattice: a mirror family at one angle and a set
/// of kappa L values.
struct LatticeCase {
  std::string family;
  CavityConfig cavity;
  std::vector<double> kappa_samples;
};

/// gamma in {pi/6, pi/4, pi/3} x kappa L in {0.1, 1, 10} x {perfect polarizers,
/// lossy |r| = 0.8 polarizers, Lorentz dichroic mirrors}, all at L = 1.
std::vector<LatticeCase> reference_lattice();

/// The dichroic mirror with omega_x = omega_p, omega_y = sqrt(2) omega_p and
/// unit oscillator strengths on both axes.
MirrorModel dichroic_reference_mirror();

struct LatticeCaseReport {
  std::size_t index = 0;  // position in the input span
  ValidationReport validation;
  double z_spread = 0.0;
  std::string error;
};

struct LatticeReport {
  std::vector<LatticeCaseReport> cases;
  double max_deviation = 0.0;
  double max_c0_spread = 0.0;  // max |c0_i - c0_ref| / |c0_ref|
  double max_z_spread = 0.0;
  std::optional<double> c0;
  bool ok = false;
};

LatticeReport validate_lattice(std::span<const LatticeCase> cases);

}  // namespace ctorque::greens
