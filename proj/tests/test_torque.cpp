#include <cmath>
#include <numbers>
#include <vector>

#include "ctorque/errors.hpp"
#include "ctorque/greens_oracle.hpp"
#include "ctorque/torque.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ctorque;
using doctest::Approx;
using std::numbers::pi;

namespace {

CavityConfig polarizers(double gamma, double L = 1.0) {
  return {L, gamma, mirror::PerfectPolarizer{1}, mirror::PerfectPolarizer{1}};
}

CavityConfig lossy(double r, double gamma, double L = 1.0) {
  return {L, gamma, mirror::LossyPolarizer{r}, mirror::LossyPolarizer{r}};
}

CavityConfig dichroic(double gamma, double L) {
  const auto m = greens::dichroic_reference_mirror();
  return {L, gamma, m, m};
}

// kappa with e^{-2 kappa L} = 1/2 at L = 1
const double kHalf = std::log(2.0) / 2.0;

}  // namespace

TEST_CASE("integrand values") {
  CHECK(integrand(1.0, polarizers(0.0)) == 0.0);
  CHECK(integrand(1.0, dichroic(0.0, 1.0)) == 0.0);
  // direct substitution: (1/2) / (1/4 + 1/2) and 0.18 / 0.91
  CHECK(integrand(kHalf, polarizers(pi / 4)) == Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(integrand(kHalf, lossy(0.6, pi / 4)) == Approx(0.18 / 0.91).epsilon(1e-14));
  CHECK(integrand(kHalf, lossy(0.6, pi / 4)) == Approx(0.197802197802197802).epsilon(1e-14));

  SUBCASE("isotropic mirror switches the torque off") {
    CavityConfig c{1.0, 0.3, mirror::ConstantPair{0.5, 0.5}, mirror::PerfectPolarizer{1}};
    CHECK(integrand(0.4, c) == 0.0);
  }
  SUBCASE("singular closure raises") {
    // r1 = (1, -1), r2 = (-1, 1): denominator 4 cos^2(gamma) at kappa -> 0
    CavityConfig c{1.0, pi / 2 - 1e-170, mirror::ConstantPair{1.0, -1.0}, mirror::ConstantPair{-1.0, 1.0}};
    CHECK_THROWS_AS(integrand(1e-300, c), SingularDenominatorError);
  }
  CHECK_THROWS_AS(integrand(0.0, polarizers(0.3)), DomainError);
}

TEST_CASE("closed forms") {
  const double ln2_over_2pi = -0.110317800076325797;  // 30-digit evaluation
  CHECK(torque_perfect_polarizers(pi / 4, 1.0) == Approx(ln2_over_2pi).epsilon(1e-15));
  CHECK(torque_perfect_polarizers(pi / 4, 2.0) == Approx(ln2_over_2pi / 2).epsilon(1e-15));
  CHECK(torque_perfect_polarizers(0.0, 1.0) == 0.0);
  CHECK(std::abs(torque_perfect_polarizers(pi / 2, 1.0)) < 1e-15);
  CHECK(torque_perfect_polarizers(0.46762064955924759, 1.0) == Approx(-0.128078721732090179).epsilon(1e-15));

  CHECK(torque_lossy(pi / 4, 1.0, 1.0) == Approx(ln2_over_2pi).epsilon(1e-15));
  CHECK(torque_lossy(pi / 4, 1.0, 0.6) == Approx(-0.0315844478591256858).epsilon(1e-15));
  CHECK(torque_lossy(pi / 4, 1.0, 0.1) == Approx(-7.97770808671935480e-4).epsilon(1e-15));
  CHECK(torque_lossy(0.0, 1.0, 0.5) == 0.0);
  CHECK_THROWS_AS(torque_lossy(0.0, 1.0, 1.0), SingularArgumentError);
  CHECK_THROWS_AS(torque_lossy(0.0, 1.0, -1.0), SingularArgumentError);
  CHECK_THROWS_AS(torque_lossy(0.3, 1.0, 1.2), DomainError);

  CHECK(small_r_approx(pi / 4, 1.0, 0.1) == Approx(-7.95774715459476679e-4).epsilon(1e-15));
  CHECK(small_r_approx(0.7, 1.0, 0.0) == 0.0);
  CHECK(std::abs(small_r_approx(pi / 2, 1.0, 0.5)) < 1e-17);

  SUBCASE("lossy form reduces to the perfect-polarizer form at |r| = 1") {
    for (double g = -1.5; g < 1.5; g += 0.0731) {
      CHECK(torque_lossy(g, 1.0, 1.0) == Approx(torque_perfect_polarizers(g, 1.0)).epsilon(1e-13));
    }
  }
  SUBCASE("weak reflection approaches the sinusoid") {
    const double ratio = torque_lossy(pi / 4, 1.0, 0.1) / small_r_approx(pi / 4, 1.0, 0.1);
    CHECK(std::abs(ratio - 1.0) < 3e-3);
  }
}

TEST_CASE("torque quadrature reproduces the closed forms") {
  auto res = torque(polarizers(pi / 4));
  CHECK(res.normalization == Normalization::HbarCOverL);
  CHECK(res.tau_dimensionless == Approx(-0.110317800076325797).epsilon(1e-12));
  CHECK(res.error_estimate <= std::max(1e-10 * std::abs(res.tau_dimensionless), 1e-14));
  CHECK(res.evaluations > 0);

  res = torque(lossy(0.6, pi / 4));
  CHECK(res.tau_dimensionless == Approx(-0.0315844478591256858).epsilon(1e-12));

  CHECK(torque(polarizers(0.0)).tau_dimensionless == 0.0);

  SUBCASE("generic constant pair against a 30-digit quadrature") {
    CavityConfig c{1.0, pi / 5, mirror::ConstantPair{0.3, -0.5}, mirror::ConstantPair{0.9, 0.1}};
    CHECK(torque(c).tau_dimensionless == Approx(-0.0486293176412035492).epsilon(1e-11));
  }
}

TEST_CASE("dispersive torque against a 30-digit quadrature") {
  // omega_x = 1, omega_y = sqrt(2), unit strengths, gamma = pi/4
  struct Case {
    double L;
    double tau;
  };
  for (const Case c : {Case{0.01, -5.32072806626889150e-4}, Case{1.0, -2.65511786771302060e-4},
                       Case{10.0, -3.99265174152050241e-5}}) {
    const auto res = torque(dichroic(pi / 4, c.L));
    CHECK(res.normalization == Normalization::HbarOmegaP);
    CHECK(res.tau_dimensionless == Approx(c.tau).epsilon(1e-9));
  }
}

TEST_CASE("torque symmetries") {
  oracle::Rng rng;
  std::vector<CavityConfig> configs = {polarizers(0.0), lossy(0.7, 0.0), dichroic(0.0, 0.5)};
  configs.push_back({2.0, 0.0, mirror::ConstantPair{-0.8, 0.4}, mirror::ConstantPair{0.2, -0.9}});
  configs.push_back({0.3, 0.0, mirror::LorentzSlab{{1.0, 2.0, 0.1}, {2.0, 1.0, 0.0}, 0.5},
                     mirror::SemiInfiniteLorentz{{0.5, 1.0, 0.0}, {1.5, 1.5, 0.2}}});
  for (auto cfg : configs) {
    for (int i = 0; i < 6; ++i) {
      const double g = rng.uniform(-1.5, 1.5);
      cfg.relative_angle = g;
      const double t = torque(cfg).tau_dimensionless;
      const double scale = std::max(std::abs(t), 1e-12);

      auto shifted = cfg;
      shifted.relative_angle = g + pi;
      CHECK(std::abs(torque(shifted).tau_dimensionless - t) <= 1e-9 * scale);

      auto flipped = cfg;
      flipped.relative_angle = -g;
      CHECK(std::abs(torque(flipped).tau_dimensionless + t) <= 1e-12 * scale);

      auto swapped = cfg;
      std::swap(swapped.mirror1, swapped.mirror2);
      CHECK(std::abs(torque(swapped).tau_dimensionless - t) <= 1e-12 * scale);
    }
    for (double zero : {0.0, pi / 2, -pi / 2}) {
      cfg.relative_angle = zero;
      CHECK(std::abs(torque(cfg).tau_dimensionless) < 1e-14);
    }
  }
}

TEST_CASE("isotropic mirror gives zero torque") {
  CavityConfig c{1.0, 0.4, mirror::SemiInfiniteLorentz{{1.0, 1.0, 0.0}, {1.0, 1.0, 0.0}},
                 greens::dichroic_reference_mirror()};
  CHECK(torque(c).tau_dimensionless == 0.0);
}

TEST_CASE("dispersionless torque scales as 1/L") {
  for (double g : {0.2, pi / 4, 1.1}) {
    const auto rows = scan_distance(polarizers(g), std::vector<double>{0.5, 1.0, 2.0, 10.0});
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      const double a = rows[i + 1].abscissa / rows[i].abscissa;
      CHECK(distance_scan_tau(rows[i + 1]) * a == Approx(distance_scan_tau(rows[i])).epsilon(1e-12));
      CHECK(tau_times_separation(rows[i]) == Approx(torque_perfect_polarizers(g)).epsilon(1e-10));
    }
  }
}

TEST_CASE("perfect-polarizer extremum is away from pi/4") {
  double best_g = 0.0;
  double best = 0.0;
  for (double g = 0.01; g < pi / 2; g += 0.001) {
    const double t = std::abs(torque_perfect_polarizers(g));
    if (t > best) {
      best = t;
      best_g = g;
    }
  }
  CHECK(std::abs(best_g - pi / 4) > 0.05);
  CHECK(best == Approx(0.128).epsilon(0.01));
}

TEST_CASE("scans") {
  const std::vector<double> zero{0.0};
  auto rows = scan_angle(polarizers(1.0), zero);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].ok());
  CHECK(rows[0].result->tau_dimensionless == 0.0);

  const std::vector<double> pair{-0.3, 0.3};
  rows = scan_angle(lossy(0.8, 0.0), pair);
  CHECK(rows[0].result->tau_dimensionless == Approx(-rows[1].result->tau_dimensionless).epsilon(1e-14));

  SUBCASE("failed rows are marked, not thrown") {
    QuadratureSettings tight;
    tight.rel_tol = 1e-14;
    tight.max_subdivisions = 1;
    const std::vector<double> grid{0.5, 0.0};
    rows = scan_angle(dichroic(0.0, 1.0), grid, tight);
    CHECK_FALSE(rows[0].ok());
    CHECK(rows[0].error.find("did not converge") != std::string::npos);
    CHECK(rows[1].ok());
  }
  CHECK_THROWS_AS(scan_angle(polarizers(0.0), std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(scan_distance(polarizers(0.3), std::vector<double>{1.0, -1.0}), DomainError);
}

TEST_CASE("non-convergence raises with the partial estimate") {
  QuadratureSettings q;
  q.max_subdivisions = 2;
  q.rel_tol = 1e-14;
  try {
    torque(polarizers(1e-3), q);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.error_estimate() > 0.0);
    CHECK(e.value() < 0.0);
  }
}

TEST_CASE("tabulated mirrors integrate over their data window") {
  // kappa-flat tables reproduce the constant-pair integral restricted to the window
  const mirror::Tabulated flat({{0.5, 0.7, -0.2}, {3.0, 0.7, -0.2}});
  CavityConfig tab{1.0, pi / 5, flat, flat};
  const auto res = torque(tab);
  REQUIRE(res.kappa_window);
  CHECK(res.kappa_window->first == 0.5);
  CHECK(res.kappa_window->second == 3.0);

  // oracle: direct kappa-space midpoint-free Simpson integration of F on [0.5, 3]
  CavityConfig ref{1.0, pi / 5, mirror::ConstantPair{0.7, -0.2}, mirror::ConstantPair{0.7, -0.2}};
  const int n = 20000;
  const double h = 2.5 / n;
  double s = integrand(0.5, ref) + integrand(3.0, ref);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * integrand(0.5 + i * h, ref);
  const double expected = -(s * h / 3.0) / (2.0 * pi);
  CHECK(res.tau_dimensionless == Approx(expected).epsilon(1e-10));

  const mirror::Tabulated other({{4.0, 0.1, 0.0}, {5.0, 0.1, 0.0}});
  CHECK_THROWS_AS(torque(CavityConfig{1.0, 0.3, flat, other}), OutOfRangeError);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(torque(polarizers(0.3, 0.0)), DomainError);
  CHECK_THROWS_AS(torque(polarizers(std::nan(""))), DomainError);
  QuadratureSettings q;
  q.rel_tol = 0.0;
  CHECK_THROWS_AS(torque(polarizers(0.3), q), DomainError);
  q = {};
  q.max_subdivisions = 0;
  CHECK_THROWS_AS(torque(polarizers(0.3), q), DomainError);
}
