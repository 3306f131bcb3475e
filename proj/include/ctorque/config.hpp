#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ctorque/torque.hpp"

namespace ctorque::cli {

enum class Command { AngleScan, DistanceScan, IntegrandDump, Validate, MaterialShow };
enum class Spacing { Linear, Log };
enum class Units { Natural, SI };

std::string_view to_string(Command c);
std::string_view to_string(Spacing s);
std::string_view to_string(Units u);

struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 1;
  Spacing spacing = Spacing::Linear;

  bool operator==(const GridSpec&) const = default;
};

/// Grid points in order; both endpoints are hit exactly.
std::vector<double> expand(const GridSpec& g);

/// Default grid for each command: angles -pi..pi (97, linear), separations
/// 0.01..100 (60, log), kappa 0.01..100 (50, log), kappa L 0.01..10 (20, log) for validate.
GridSpec default_grid(Command c);

struct RunConfig {
  Command command = Command::AngleScan;
  CavityConfig cavity;
  bool has_mirrors = false;  // validate without mirrors runs the reference lattice
  GridSpec grid;
  QuadratureSettings quadrature;
  Units units = Units::Natural;
  std::optional<double> omega_p_ref_si;  // rad / s
  std::string output;                    // empty or "-" means stdout

  /// Fully resolved configuration, defaults included, as recorded in output preambles.
  nlohmann::json resolved;
};

/// Parses and validates one JSON object. Unknown keys anywhere are rejected.
/// Relative tabulated-data paths resolve against `base_dir`.
/// Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view document, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace ctorque::cli
