#include "ctorque/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace ctorque::quadrature {

namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending); odd entries are
// also the 7-point Gauss abscissae.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Interval {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

Estimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = f(center);
  double res_gauss = fc * kGaussWeights[3];
  double res_kronrod = fc * kKronrodWeights[7];
  double res_abs = std::abs(res_kronrod);

  std::array<double, 7> f_lo{};
  std::array<double, 7> f_hi{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    f_lo[j] = f(center - dx);
    f_hi[j] = f(center + dx);
    const double sum = f_lo[j] + f_hi[j];
    res_kronrod += kKronrodWeights[j] * sum;
    res_abs += kKronrodWeights[j] * (std::abs(f_lo[j]) + std::abs(f_hi[j]));
    if (j % 2 == 1) res_gauss += kGaussWeights[j / 2] * sum;
  }

  const double mean = 0.5 * res_kronrod;
  double res_asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kKronrodWeights[j] * (std::abs(f_lo[j] - mean) + std::abs(f_hi[j] - mean));
  }

  Estimate est;
  est.value = res_kronrod * half;
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_kronrod - res_gauss) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * res_abs, err);
  est.abs_error = err;
  est.evaluations = 15;
  est.intervals = 1;
  est.converged = true;
  return est;
}

Estimate integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                   double abs_tol, int max_intervals) {
  auto tolerance = [&](double value) { return std::max(abs_tol, rel_tol * std::abs(value)); };

  const Estimate first = gauss_kronrod_15(f, a, b);
  int evaluations = first.evaluations;

  std::priority_queue<Interval> heap;
  heap.push({a, b, first.value, first.abs_error});
  double value = first.value;
  double error = first.abs_error;

  while (error > tolerance(value) && static_cast<int>(heap.size()) < max_intervals) {
    const Interval worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    heap.pop();

    const Estimate left = gauss_kronrod_15(f, worst.a, mid);
    const Estimate right = gauss_kronrod_15(f, mid, worst.b);
    evaluations += left.evaluations + right.evaluations;
    heap.push({worst.a, mid, left.value, left.abs_error});
    heap.push({mid, worst.b, right.value, right.abs_error});

    value += left.value + right.value - worst.value;
    error += left.abs_error + right.abs_error - worst.error;
  }

  // Re-sum from the pieces so running-update drift does not leak into the result.
  Estimate out;
  out.intervals = static_cast<int>(heap.size());
  std::vector<Interval> pieces;
  pieces.reserve(heap.size());
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Interval& l, const Interval& r) { return l.a < r.a; });
  for (const auto& p : pieces) {
    out.value += p.value;
    out.abs_error += p.error;
  }
  out.evaluations = evaluations;
  out.converged = out.abs_error <= tolerance(out.value);
  return out;
}

}  // namespace ctorque::quadrature
