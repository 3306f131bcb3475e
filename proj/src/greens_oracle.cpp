#include "ctorque/greens_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ctorque/errors.hpp"

namespace ctorque::greens {

namespace {

const Complex kI{Real(0), Real(1)};

CMat rotation(Real angle) {
  const Real c = cos(angle);
  const Real s = sin(angle);
  return {{Complex(c), Complex(-s), Complex(s), Complex(c)}};
}

CMat inverse(const CMat& m, const char* what) {
  const Complex det = m.det();
  if (!(abs(det) >= kDeterminantGuard)) {
    std::ostringstream os;
    os << "singular " << what << " (|det| = " << static_cast<double>(abs(det)) << ")";
    throw SingularBracketError(os.str());
  }
  const Complex inv = Complex(1) / det;
  return {{m.a[3] * inv, -m.a[1] * inv, -m.a[2] * inv, m.a[0] * inv}};
}

Real off_diagonal_difference(const CMat& m) { return (m(0, 1) - m(1, 0)).real(); }

}  // namespace

HomogeneousSolutions::HomogeneousSolutions(Complex q, Real z1, Real z2, Real gamma,
                                           const ReflectionPair& mirror1, const ReflectionPair& mirror2)
    : q_(q),
      z1_(z1),
      z2_(z2),
      rot_u_(rotation(gamma / 2)),
      rot_v_(rotation(-gamma / 2)),
      refl1_(CMat::diag(Complex(mirror1.r_x), Complex(mirror1.r_y))),
      refl2_(CMat::diag(Complex(mirror2.r_x), Complex(mirror2.r_y))) {}

// u0(z) = 1 e^{iq(z - z2)} + diag(r2) e^{-iq(z - z2)}
CMat HomogeneousSolutions::u0(Real z) const {
  const Complex out = exp(kI * q_ * (z - z2_));
  const Complex back = exp(-kI * q_ * (z - z2_));
  return out * CMat::identity() + back * refl2_;
}

// v0(z) = 1 e^{-iq(z - z1)} + diag(r1) e^{iq(z - z1)}
CMat HomogeneousSolutions::v0(Real z) const {
  const Complex out = exp(-kI * q_ * (z - z1_));
  const Complex back = exp(kI * q_ * (z - z1_));
  return out * CMat::identity() + back * refl1_;
}

CMat HomogeneousSolutions::u(Real z) const { return rot_u_ * u0(z); }

CMat HomogeneousSolutions::du(Real z) const {
  const Complex ik = kI * q_;
  const CMat d = (ik * exp(ik * (z - z2_))) * CMat::identity() - (ik * exp(-ik * (z - z2_))) * refl2_;
  return rot_u_ * d;
}

CMat HomogeneousSolutions::d2u(Real z) const { return (-q_ * q_) * u(z); }

CMat HomogeneousSolutions::v(Real z) const { return rot_v_ * v0(z); }

CMat HomogeneousSolutions::dv(Real z) const {
  const Complex ik = kI * q_;
  const CMat d = (-ik * exp(-ik * (z - z1_))) * CMat::identity() + (ik * exp(ik * (z - z1_))) * refl1_;
  return rot_v_ * d;
}

CMat HomogeneousSolutions::d2v(Real z) const { return (-q_ * q_) * v(z); }

HomogeneousSolutions build_solutions(double kappa, const CavityConfig& cfg) {
  if (!(kappa > 0.0)) throw DomainError("build_solutions needs kappa > 0");
  validate(cfg);
  return HomogeneousSolutions(Complex(Real(0), Real(kappa)), Real(0), Real(cfg.separation),
                              Real(cfg.relative_angle), reflection_pair(cfg.mirror1, kappa),
                              reflection_pair(cfg.mirror2, kappa));
}

GreensEvaluation greens_matrix(const HomogeneousSolutions& sol, Real z, Real zp, Branch branch) {
  const bool right = branch == Branch::Right || (branch == Branch::Auto && z >= zp);

  // Both branches have the form G = s * a(z) * B(z')^{-1}, with
  //   B = a'(z') - b'(z') b^{-1}(z') a(z'),   (a, b, s) = (u, v, +1) or (v, u, -1).
  auto a = [&](Real x) { return right ? sol.u(x) : sol.v(x); };
  auto da = [&](Real x) { return right ? sol.du(x) : sol.dv(x); };
  auto d2a = [&](Real x) { return right ? sol.d2u(x) : sol.d2v(x); };
  auto b = [&](Real x) { return right ? sol.v(x) : sol.u(x); };
  auto db = [&](Real x) { return right ? sol.dv(x) : sol.du(x); };
  auto d2b = [&](Real x) { return right ? sol.d2v(x) : sol.d2u(x); };
  const Complex sign = right ? Complex(1) : Complex(-1);

  const CMat a_p = a(zp);
  const CMat da_p = da(zp);
  const CMat b_p = b(zp);
  const CMat db_p = db(zp);
  const CMat b_inv = inverse(b_p, "boundary solution");
  const CMat bracket = da_p - db_p * b_inv * a_p;
  const CMat bracket_inv = inverse(bracket, "Green's function bracket");

  // d/dz' of the bracket, using (b^{-1})' = -b^{-1} b' b^{-1}.
  const CMat b_inv_d = -(b_inv * db_p * b_inv);
  const CMat dbracket = d2a(zp) - d2b(zp) * b_inv * a_p - db_p * b_inv_d * a_p - db_p * b_inv * da_p;
  const CMat dbracket_inv = -(bracket_inv * dbracket * bracket_inv);

  GreensEvaluation out;
  out.g = sign * (a(z) * bracket_inv);
  out.dg_dz = sign * (da(z) * bracket_inv);
  out.dg_dzprime = sign * (a(z) * dbracket_inv);
  return out;
}

GreensEvaluation greens_matrix(double z, double zprime, double kappa, const CavityConfig& cfg, Branch branch) {
  const auto sol = build_solutions(kappa, cfg);
  return greens_matrix(sol, Real(z), Real(zprime), branch);
}

namespace {

void require_interior(double z, const CavityConfig& cfg) {
  const double margin = 1e-6 * cfg.separation;
  if (!(z >= margin && z <= cfg.separation - margin)) {
    std::ostringstream os;
    os << "oracle point z = " << z << " must lie in [" << margin << ", " << cfg.separation - margin << "]";
    throw DomainError(os.str());
  }
}

Real kernel(const HomogeneousSolutions& sol, Real z, Branch branch) {
  const auto ev = greens_matrix(sol, z, z, branch);
  return off_diagonal_difference(ev.dg_dzprime - ev.dg_dz);
}

}  // namespace

double oracle_integrand(double kappa, const CavityConfig& cfg, double z, Branch branch) {
  const auto sol = build_solutions(kappa, cfg);
  require_interior(z, cfg);
  return static_cast<double>(kernel(sol, Real(z), branch));
}

ValidationReport validate(const CavityConfig& cfg, std::span<const double> kappa_samples) {
  if (kappa_samples.empty()) throw DomainError("validate needs at least one kappa sample");
  constexpr double kFloor = std::numeric_limits<double>::min();

  ValidationReport report;
  const double z_mid = 0.5 * cfg.separation;
  for (double kappa : kappa_samples) {
    if (!(kappa > 0.0)) throw DomainError("kappa samples must be > 0");
    report.kernel.push_back(oracle_integrand(kappa, cfg, z_mid));
    report.integrand.push_back(integrand(kappa, cfg));
  }

  std::vector<double> ratios;
  for (std::size_t i = 0; i < kappa_samples.size() && ratios.size() < 2; ++i) {
    if (report.integrand[i] != 0.0) ratios.push_back(report.kernel[i] / report.integrand[i]);
  }
  if (ratios.empty()) {
    const bool all_zero =
        std::all_of(report.kernel.begin(), report.kernel.end(), [](double k) { return k == 0.0; });
    report.max_deviation = all_zero ? 0.0 : std::numeric_limits<double>::infinity();
    return report;
  }
  const double c0 = ratios.front();
  if (ratios.size() > 1 && std::abs(ratios[1] - c0) > kValidationThreshold * std::abs(c0)) {
    std::ostringstream os;
    os.precision(17);
    os << "kernel/integrand constant differs between reference points: " << c0 << " vs " << ratios[1];
    throw InconsistentConstantError(os.str());
  }
  report.c0 = c0;
  for (std::size_t i = 0; i < kappa_samples.size(); ++i) {
    const double f = report.integrand[i];
    const double dev = std::abs(report.kernel[i] / c0 - f) / std::max(std::abs(f), kFloor);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

double kernel_z_spread(double kappa, const CavityConfig& cfg, int count) {
  if (count < 1) throw DomainError("kernel_z_spread needs count >= 1");
  const auto sol = build_solutions(kappa, cfg);
  const Real L{cfg.separation};
  const Real mid = kernel(sol, L / 2, Branch::Auto);
  if (mid == 0) return 0.0;
  Real spread{0};
  for (int i = 1; i <= count; ++i) {
    const Real z = L * i / (count + 1);
    spread = std::max(spread, Real(abs(kernel(sol, z, Branch::Auto) - mid) / abs(mid)));
  }
  return static_cast<double>(spread);
}

MirrorModel dichroic_reference_mirror() {
  mirror::SemiInfiniteLorentz m;
  m.x = LorentzResonance{1.0, 1.0, 0.0};
  m.y = LorentzResonance{std::numbers::sqrt2, 1.0, 0.0};
  return m;
}

std::vector<LatticeCase> reference_lattice() {
  using std::numbers::pi;
  const std::vector<std::pair<std::string, MirrorModel>> families = {
      {"perfect_polarizer", mirror::PerfectPolarizer{1}},
      {"lossy_0.8", mirror::LossyPolarizer{0.8}},
      {"lorentz_dichroic", dichroic_reference_mirror()},
  };
  std::vector<LatticeCase> cases;
  for (const auto& [name, model] : families) {
    for (double gamma : {pi / 6, pi / 4, pi / 3}) {
      LatticeCase c;
      c.family = name;
      c.cavity = CavityConfig{1.0, gamma, model, model};
      c.kappa_samples = {0.1, 1.0, 10.0};
      cases.push_back(std::move(c));
    }
  }
  return cases;
}

LatticeReport validate_lattice(std::span<const LatticeCase> cases) {
  LatticeReport out;
  bool failed = false;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    LatticeCaseReport r;
    r.index = i;
    try {
      r.validation = validate(cases[i].cavity, cases[i].kappa_samples);
      for (double kappa : cases[i].kappa_samples) {
        r.z_spread = std::max(r.z_spread, kernel_z_spread(kappa, cases[i].cavity));
      }
    } catch (const Error& e) {
      r.error = e.what();
      failed = true;
    }
    out.max_deviation = std::max(out.max_deviation, r.validation.max_deviation);
    out.max_z_spread = std::max(out.max_z_spread, r.z_spread);
    if (r.validation.c0) {
      if (!out.c0) out.c0 = r.validation.c0;
      out.max_c0_spread = std::max(out.max_c0_spread, std::abs(*r.validation.c0 - *out.c0) / std::abs(*out.c0));
    }
    out.cases.push_back(std::move(r));
  }
  out.ok = !failed && out.max_deviation <= kValidationThreshold && out.max_c0_spread <= kValidationThreshold &&
           out.max_z_spread <= 1e-9;
  return out;
}

}  // namespace ctorque::greens
