#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ctorque/errors.hpp"
#include "ctorque/runner.hpp"
#include "ctorque/units.hpp"
#include "doctest.h"

using namespace ctorque;
using namespace ctorque::cli;
using doctest::Approx;

namespace {

const std::string kPolarizers = R"("mirror1": {"type": "perfect_polarizer"}, "mirror2": {"type": "perfect_polarizer"})";
const std::string kDichroic =
    R"("mirror1": {"type": "lorentz", "x": {"omega_0": 1, "omega_p": 1}, "y": {"omega_0": 1.4142135623730951, "omega_p": 1}},
       "mirror2": {"type": "lorentz", "x": {"omega_0": 1, "omega_p": 1}, "y": {"omega_0": 1.4142135623730951, "omega_p": 1}})";
// Tabulated mirrors whose kappa ranges never overlap: every torque row fails.
const std::string kDisjoint =
    R"("mirror1": {"type": "tabulated", "samples": [[0.1, 0.5, 0.1], [1.0, 0.4, 0.1]]},
       "mirror2": {"type": "tabulated", "samples": [[2.0, 0.5, 0.1], [3.0, 0.4, 0.1]]})";

RunOutcome run_doc(const std::string& doc) { return run(parse_config(doc)); }

std::string emit(const Table& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

double num(const std::vector<Cell>& row, std::size_t i) { return std::get<double>(row[i]); }
const std::string& text(const std::vector<Cell>& row, std::size_t i) { return std::get<std::string>(row[i]); }

struct Temp {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "ctorque_test_runner";
  Temp() { std::filesystem::create_directories(dir); }
  ~Temp() { std::filesystem::remove_all(dir); }
  std::filesystem::path write(const std::string& name, const std::string& content) const {
    std::ofstream(dir / name) << content;
    return dir / name;
  }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CTORQUE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("angle scan") {
  const auto out = run_doc(R"({"command": "angle-scan", )" + kPolarizers + "}");
  CHECK(out.success);
  CHECK(out.exit_status() == kExitSuccess);
  const Table& t = out.table;
  CHECK(t.columns == std::vector<std::string>{"gamma", "tau", "error_estimate", "evaluations", "status"});
  REQUIRE(t.rows.size() == 97);
  CHECK(t.preamble.at(0) == "ctorque angle-scan");
  CHECK(t.preamble.at(1).rfind("config: {", 0) == 0);

  double extremum = 0.0;
  for (const auto& row : t.rows) {
    CHECK(text(row, 4) == "ok");
    extremum = std::max(extremum, std::abs(num(row, 1)));
  }
  CHECK(extremum == Approx(0.128).epsilon(0.01));
  // removable points carry their limit value
  CHECK(num(t.rows[48], 0) == 0.0);
  CHECK(num(t.rows[48], 1) == 0.0);
  CHECK(std::abs(num(t.rows[0], 1)) < 1e-12);
  CHECK(std::abs(num(t.rows[24], 1)) < 1e-12);
}

TEST_CASE("angle scan in SI units") {
  const auto out = run_doc(R"({"command": "angle-scan", "L": 2, "units": "si", "omega_p_ref_si": 1e16,
                               "grid": {"start": 0.5, "stop": 0.5, "count": 1}, )" +
                           kPolarizers + "}");
  const Table& t = out.table;
  REQUIRE(t.rows.size() == 1);
  const double tau = num(t.rows[0], column(t, "tau"));
  const double L_m = 2.0 * si::c / 1e16;
  CHECK(num(t.rows[0], column(t, "tau_si_Nm")) == Approx(tau * si::hbar_c / L_m).epsilon(1e-14));
  CHECK(t.preamble.at(2).find("omega_p_ref_si = 10000000000000000 rad/s") != std::string::npos);
}

TEST_CASE("distance scan") {
  const auto out = run_doc(R"({"command": "distance-scan", "grid": {"start": 0.01, "stop": 100, "count": 9, "spacing": "log"}, )" +
                           kDichroic + "}");
  CHECK(out.success);
  const Table& t = out.table;
  CHECK(t.columns == std::vector<std::string>{"L", "tau", "tau_times_L", "error_estimate", "evaluations", "status"});
  REQUIRE(t.rows.size() == 9);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& row : t.rows) {
    const double mag = std::abs(num(row, 1));
    CHECK(mag < prev);
    prev = mag;
    CHECK(num(row, 2) == Approx(num(row, 1) * num(row, 0)).epsilon(1e-15));
  }
  CHECK(num(t.rows[4], 1) == Approx(-2.65511786771302060e-4).epsilon(1e-8));

  SUBCASE("dispersionless mirrors report tau in hbar c units") {
    const auto d = run_doc(R"({"command": "distance-scan", "grid": {"start": 0.5, "stop": 2, "count": 2, "spacing": "log"}, )" +
                           kPolarizers + "}");
    const double t0 = num(d.table.rows[0], 2);
    CHECK(num(d.table.rows[1], 2) == Approx(t0).epsilon(1e-12));
    CHECK(num(d.table.rows[0], 1) == Approx(t0 / 0.5).epsilon(1e-15));
  }
}

TEST_CASE("integrand dump and material show") {
  auto out = run_doc(R"({"command": "integrand-dump", "grid": {"start": 0.1, "stop": 10, "count": 3, "spacing": "log"}, )" +
                     kDichroic + "}");
  CHECK(out.success);
  CHECK(out.table.columns.size() == 7);
  REQUIRE(out.table.rows.size() == 3);
  CHECK(num(out.table.rows[1], 0) == Approx(1.0).epsilon(1e-15));
  CHECK(num(out.table.rows[1], 1) == Approx(integrand(1.0, parse_config(R"({"command": "integrand-dump", )" + kDichroic + "}").cavity)));

  out = run_doc(R"({"command": "material-show", "grid": {"start": 1, "stop": 1, "count": 1}, )" + kDichroic + "}");
  CHECK(out.success);
  const Table& t = out.table;
  REQUIRE(t.rows.size() == 1);
  // eps(i) = 1 + 1 / (1 + 1) along x, 1 + 1 / (2 + 1) along y
  CHECK(num(t.rows[0], column(t, "eps1_x")) == Approx(1.5));
  CHECK(num(t.rows[0], column(t, "eps1_y")) == Approx(4.0 / 3.0));
  const double rx = num(t.rows[0], column(t, "r1_x"));
  CHECK(rx == Approx((1 - std::sqrt(1.5)) / (1 + std::sqrt(1.5))));
  CHECK(num(t.rows[0], column(t, "delta_r1")) ==
        Approx(rx - num(t.rows[0], column(t, "r1_y"))).epsilon(1e-14));

  const auto dispersionless = run_doc(R"({"command": "material-show", "grid": {"start": 1, "stop": 1, "count": 1}, )" +
                                      kPolarizers + "}");
  CHECK(std::isnan(num(dispersionless.table.rows[0], 1)));
  CHECK(num(dispersionless.table.rows[0], column(dispersionless.table, "r1_x")) == 1.0);
}

TEST_CASE("validate on the reference lattice") {
  const auto out = run_doc(R"({"command": "validate"})");
  CHECK(out.success);
  CHECK(out.exit_status() == kExitSuccess);
  const Table& t = out.table;
  CHECK(t.rows.size() == 27);
  for (const auto& row : t.rows) {
    CHECK(text(row, column(t, "status")) == "ok");
    CHECK(num(row, column(t, "deviation")) <= 1e-8);
    CHECK(num(row, column(t, "z_spread")) <= 1e-9);
  }
  REQUIRE(t.preamble.at(4).rfind("c0 = ", 0) == 0);
  CHECK(std::stod(t.preamble.at(4).substr(5)) == Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("validate a configured cavity") {
  const auto out = run_doc(R"({"command": "validate", "grid": {"start": 0.1, "stop": 10, "count": 4, "spacing": "log"}, )" +
                           kDichroic + "}");
  CHECK(out.success);
  REQUIRE(out.table.rows.size() == 4);
  for (const auto& row : out.table.rows) CHECK(num(row, 3) <= 1e-8);
}

TEST_CASE("failed rows are reported, not thrown") {
  const auto out = run_doc(R"({"command": "angle-scan", "grid": {"start": 0.1, "stop": 0.2, "count": 2}, )" + kDisjoint + "}");
  CHECK_FALSE(out.success);
  CHECK(out.exit_status() == kExitComputationFailure);
  REQUIRE(out.table.rows.size() == 2);
  for (const auto& row : out.table.rows) {
    CHECK(std::isnan(num(row, 1)));
    CHECK(text(row, 4).rfind("error: ", 0) == 0);
  }

  const auto dump = run_doc(R"({"command": "integrand-dump", "grid": {"start": 0.5, "stop": 2.5, "count": 3, "spacing": "linear"}, )" +
                            kDisjoint + "}");
  CHECK_FALSE(dump.success);
  for (const auto& row : dump.table.rows) CHECK(text(row, 6) != "ok");
}

TEST_CASE("determinism and round trip") {
  for (const std::string doc :
       {R"({"command": "angle-scan", "grid": {"start": -1.5, "stop": 1.5, "count": 13}, )" + kPolarizers + "}",
        R"({"command": "distance-scan", "grid": {"start": 0.1, "stop": 10, "count": 5, "spacing": "log"}, )" + kDichroic + "}",
        R"({"command": "material-show", )" + kDichroic + "}"}) {
    const std::string a = emit(run_doc(doc).table);
    const std::string b = emit(run_doc(doc).table);
    CHECK(a == b);
    const Table back = read_csv(a);
    CHECK(emit(back) == a);
  }
}

TEST_CASE("SI conversion") {
  CHECK(to_si(0.1, Normalization::HbarCOverL, {1e-8, std::nullopt}) == Approx(3.16152677155956e-19).epsilon(1e-12));
  CHECK(to_si(1.0, Normalization::HbarCOverL, {1.0, std::nullopt}) == Approx(3.16152677155956e-26).epsilon(1e-12));
  CHECK(to_si(0.0, Normalization::HbarCOverL, {1e-8, std::nullopt}) == 0.0);
  CHECK(to_si(2.0, Normalization::HbarOmegaP, {std::nullopt, 1e16}) == Approx(2.0 * si::hbar * 1e16).epsilon(1e-15));
  CHECK_THROWS_AS(to_si(1.0, Normalization::HbarCOverL, {std::nullopt, 1e16}), MissingScaleError);
  CHECK_THROWS_AS(to_si(1.0, Normalization::HbarOmegaP, {1e-8, std::nullopt}), MissingScaleError);
  CHECK_THROWS_AS(to_si(1.0, Normalization::HbarCOverL, {-1e-8, std::nullopt}), DomainError);
  CHECK(natural_length_m(si::c) == 1.0);
}

TEST_CASE("command-line exit statuses") {
  Temp tmp;
  const auto ok = tmp.write("ok.json", R"({"command": "angle-scan", "grid": {"start": 0.1, "stop": 1, "count": 4}, )" +
                                           kPolarizers + "}");
  const auto out_a = tmp.dir / "a.csv";
  const auto out_b = tmp.dir / "b.csv";
  CHECK(run_cli("--config " + ok.string() + " --output " + out_a.string()) == 0);
  CHECK(run_cli("--quiet --config " + ok.string() + " --output " + out_b.string()) == 0);
  CHECK(slurp(out_a) == slurp(out_b));
  CHECK(read_csv(slurp(out_a)).rows.size() == 4);

  const auto failing = tmp.write("fail.json", R"({"command": "angle-scan", "grid": {"start": 0.1, "stop": 1, "count": 2}, )" +
                                                  kDisjoint + "}");
  CHECK(run_cli("--config " + failing.string()) == 1);

  const auto bad = tmp.write("bad.json", R"({"command": "angle-scan", "gama": 1})");
  CHECK(run_cli("--config " + bad.string()) == 2);
  CHECK(run_cli("--config " + (tmp.dir / "absent.json").string()) == 2);
  CHECK(run_cli("") == 2);

  // the output key in the file is honoured, --output overrides it
  const auto routed = tmp.write("routed.json", R"({"command": "validate", "output": ")" + (tmp.dir / "v.csv").string() +
                                                   R"(", "grid": {"start": 1, "stop": 1, "count": 1}, )" + kPolarizers + "}");
  CHECK(run_cli("--config " + routed.string()) == 0);
  CHECK(std::filesystem::exists(tmp.dir / "v.csv"));
}
