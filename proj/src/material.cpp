#include "ctorque/material.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ctorque/errors.hpp"

namespace ctorque {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_amplitude(double r, const char* what) {
  if (!std::isfinite(r) || std::abs(r) > 1.0) {
    throw DomainError(std::string(what) + " must satisfy |r| <= 1, got " + std::to_string(r));
  }
}

}  // namespace

void validate(const LorentzResonance& res) {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(res.resonance_freq)) throw DomainError("resonance frequency must be finite and >= 0");
  if (!ok(res.plasma_freq)) throw DomainError("plasma frequency must be finite and >= 0");
  if (!ok(res.inverse_lifetime)) throw DomainError("inverse lifetime must be finite and >= 0");
}

namespace mirror {

Tabulated::Tabulated(std::vector<TabulatedSample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DomainError("tabulated mirror needs at least 2 samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.kappa) || s.kappa < 0.0) throw DomainError("tabulated kappa must be finite and >= 0");
    require_amplitude(s.r_x, "tabulated r_x");
    require_amplitude(s.r_y, "tabulated r_y");
    if (i > 0 && !(s.kappa > samples_[i - 1].kappa)) {
      throw DomainError("tabulated kappa values must be strictly increasing");
    }
  }
}

ReflectionPair Tabulated::at(double kappa) const {
  if (!(kappa >= kappa_min() && kappa <= kappa_max())) {
    std::ostringstream os;
    os << "kappa = " << kappa << " outside tabulated range [" << kappa_min() << ", " << kappa_max() << "]";
    throw OutOfRangeError(os.str());
  }
  auto hi = std::lower_bound(samples_.begin(), samples_.end(), kappa,
                             [](const TabulatedSample& s, double k) { return s.kappa < k; });
  if (hi->kappa == kappa) return ReflectionPair::make(hi->r_x, hi->r_y);
  auto lo = hi - 1;
  const double t = (kappa - lo->kappa) / (hi->kappa - lo->kappa);
  return ReflectionPair::make(lo->r_x + t * (hi->r_x - lo->r_x), lo->r_y + t * (hi->r_y - lo->r_y));
}

}  // namespace mirror

void validate(const MirrorModel& m) {
  std::visit(overloaded{
                 [](const mirror::ConstantPair& p) {
                   require_amplitude(p.r_x, "r_x");
                   require_amplitude(p.r_y, "r_y");
                 },
                 [](const mirror::PerfectPolarizer& p) {
                   if (p.sign != 1 && p.sign != -1) throw DomainError("perfect polarizer sign must be +1 or -1");
                 },
                 [](const mirror::LossyPolarizer& p) { require_amplitude(p.r, "lossy r"); },
                 [](const mirror::SemiInfiniteLorentz& p) {
                   validate(p.x);
                   validate(p.y);
                 },
                 [](const mirror::LorentzSlab& p) {
                   validate(p.x);
                   validate(p.y);
                   if (!std::isfinite(p.thickness) || p.thickness < 0.0) {
                     throw DomainError("slab thickness must be finite and >= 0");
                   }
                 },
                 [](const mirror::Tabulated&) {},  // checked on construction
             },
             m);
}

bool is_dispersionless(const MirrorModel& m) {
  return std::holds_alternative<mirror::ConstantPair>(m) ||
         std::holds_alternative<mirror::PerfectPolarizer>(m) ||
         std::holds_alternative<mirror::LossyPolarizer>(m);
}

double eps_imaginary_axis(const LorentzResonance& res, double xi) {
  if (!(xi >= 0.0)) throw DomainError("imaginary frequency must be >= 0");
  const double restoring = res.resonance_freq * res.resonance_freq + xi * xi + xi * res.inverse_lifetime;
  const double strength = res.plasma_freq * res.plasma_freq;
  if (restoring == 0.0) {
    if (strength == 0.0) return 1.0;
    throw StaticDivergenceError("eps(i xi) diverges: undamped free plasma at xi = 0");
  }
  return 1.0 + strength / restoring;
}

double fresnel_semiinfinite(double eps) {
  if (!(eps >= 1.0)) throw DomainError("fresnel_semiinfinite needs eps >= 1");
  if (std::isinf(eps)) return -1.0;
  const double n = std::sqrt(eps);
  // (1 - n) / (1 + n) with the numerator written to avoid cancellation near eps = 1.
  return -(eps - 1.0) / ((1.0 + n) * (1.0 + n));
}

double slab_reflection(const LorentzResonance& res, double thickness, double kappa) {
  if (!(thickness >= 0.0)) throw DomainError("slab thickness must be >= 0");
  if (!(kappa > 0.0)) throw DomainError("kappa must be > 0");
  const double eps = eps_imaginary_axis(res, kappa);
  const double r01 = fresnel_semiinfinite(eps);
  const double attenuation = std::exp(-2.0 * std::sqrt(eps) * kappa * thickness);
  return r01 * (-std::expm1(-2.0 * std::sqrt(eps) * kappa * thickness)) / (1.0 - r01 * r01 * attenuation);
}

ReflectionPair reflection_pair(const MirrorModel& m, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("reflection_pair needs kappa > 0");
  return std::visit(
      overloaded{
          [](const mirror::ConstantPair& p) { return ReflectionPair::make(p.r_x, p.r_y); },
          [](const mirror::PerfectPolarizer& p) { return ReflectionPair::make(p.sign, 0.0); },
          [](const mirror::LossyPolarizer& p) { return ReflectionPair::make(p.r, 0.0); },
          [kappa](const mirror::SemiInfiniteLorentz& p) {
            // xi = c kappa with c = 1
            return ReflectionPair::make(fresnel_semiinfinite(eps_imaginary_axis(p.x, kappa)),
                                        fresnel_semiinfinite(eps_imaginary_axis(p.y, kappa)));
          },
          [kappa](const mirror::LorentzSlab& p) {
            return ReflectionPair::make(slab_reflection(p.x, p.thickness, kappa),
                                        slab_reflection(p.y, p.thickness, kappa));
          },
          [kappa](const mirror::Tabulated& p) { return p.at(kappa); },
      },
      m);
}

mirror::Tabulated read_tabulated(std::istream& in) {
  std::vector<mirror::TabulatedSample> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    mirror::TabulatedSample s;
    if (!(ls >> s.kappa)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw DomainError("tabulated data line " + std::to_string(lineno) + ": expected 'kappa r_x r_y'");
    }
    std::string extra;
    if (!(ls >> s.r_x >> s.r_y) || (ls >> extra)) {
      throw DomainError("tabulated data line " + std::to_string(lineno) + ": expected exactly 3 columns");
    }
    samples.push_back(s);
  }
  return mirror::Tabulated(std::move(samples));
}

mirror::Tabulated read_tabulated(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tabulated data file '" + path.string() + "'");
  return read_tabulated(in);
}

}  // namespace ctorque
