#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "core/config.hpp"
#include "granit.h"

namespace fs = std::filesystem;

using granit::ConfigError;
using granit::RunConfig;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("granit_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string cmd =
        std::string(GRANIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

}  // namespace

TEST_CASE("config overrides and unit conversions") {
    RunConfig cfg;
    cfg.set_line("excitation.B1_mT = 0.9");
    CHECK(cfg.B1 == doctest::Approx(0.9e-3));
    cfg.set_line("array.standoff_mm=1.2");
    CHECK(cfg.array.standoff == doctest::Approx(1.2e-3));
    cfg.set_line("adiabaticity.B0y_list_mT = 0.1, 0.4");
    REQUIRE(cfg.adiabaticity_B0y.size() == 2);
    CHECK(cfg.adiabaticity_B0y[1] == doctest::Approx(0.4e-3));
    cfg.set_line("run.output_format = json");
    CHECK(cfg.output_format == "json");
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("config rejects malformed input") {
    RunConfig cfg;
    CHECK_THROWS_AS(cfg.set_line("no_equals_sign"), ConfigError);
    CHECK_THROWS_AS(cfg.set_line("bogus.key = 1"), ConfigError);
    CHECK_THROWS_AS(cfg.set_line("excitation.B1_mT = fast"), ConfigError);
    CHECK_THROWS_AS(cfg.set_line("velocity.nodes = 3.7"), ConfigError);
    CHECK_THROWS_AS(cfg.set_line("run.output_format = yaml"), ConfigError);
    CHECK_THROWS_AS(cfg.set_line("adiabaticity.B0y_list_mT = "), ConfigError);
}

TEST_CASE("explicit excitation conflicts with derive_from_array") {
    RunConfig a;
    a.set_line("excitation.derive_from_array = true");
    CHECK_THROWS_AS(a.set_line("excitation.beta_hat_T_per_m = 0.5"),
                    ConfigError);
    RunConfig b;
    b.set_line("excitation.B1_mT = 0.7");
    CHECK_THROWS_AS(b.set_line("excitation.derive_from_array = true"),
                    ConfigError);
    // B0y stays allowed either way
    RunConfig c;
    c.set_line("excitation.derive_from_array = true");
    CHECK_NOTHROW(c.set_line("excitation.B0y_mT = 0.2"));
}

TEST_CASE("file errors carry the path and line number") {
    const auto dir = temp_dir("cfgfile");
    const auto path = dir / "broken.cfg";
    {
        std::ofstream out(path);
        out << "# comment only\n";
        out << "velocity.mean_m_per_s = 4.2\n";
        out << "transition.n_states = many\n";
    }
    RunConfig cfg;
    try {
        cfg.load_file(path.string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(path.string() + ":3:") != std::string::npos);
    }
    CHECK(cfg.velocity.mean == doctest::Approx(4.2));  // earlier lines applied
    RunConfig missing;
    CHECK_THROWS_AS(missing.load_file((dir / "nope.cfg").string()), ConfigError);
}

TEST_CASE("validate catches inconsistent values") {
    RunConfig cfg;
    cfg.set_line("transition.initial_state = 7");
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    RunConfig cfg2;
    cfg2.set_line("resonance.f_min_Hz = 200");  // above f_max
    CHECK_THROWS_AS(cfg2.validate(), ConfigError);
    RunConfig cfg3;
    cfg3.set_line("array.n_wires = 12");
    CHECK_THROWS_AS(cfg3.validate(), ConfigError);
}

TEST_CASE("the checked-in benchmark file equals the built-in defaults") {
    RunConfig cfg;
    cfg.load_file(GRANIT_CONFIG_EXAMPLE);
    CHECK_NOTHROW(cfg.validate());
    const RunConfig defaults;
    CHECK(cfg.beta_hat == defaults.beta_hat);
    CHECK(cfg.B1 == defaults.B1);
    CHECK(cfg.array.currents == defaults.array.currents);
    CHECK(cfg.resonance_f_step == defaults.resonance_f_step);
    CHECK(cfg.adiabaticity_B0y == defaults.adiabaticity_B0y);
    CHECK(cfg.constants.mu_neutron == doctest::Approx(defaults.constants.mu_neutron).epsilon(1e-14));
}

TEST_CASE("C API: status codes and error reporting") {
    granit_config* cfg = granit_config_create();
    REQUIRE(cfg != nullptr);

    CHECK(granit_config_set(cfg, "excitation.B1_mT = 0.9") == GRANIT_OK);
    CHECK(std::string(granit_config_error(cfg)).empty());

    CHECK(granit_config_set(cfg, "bogus.key = 1") == GRANIT_ERROR_USAGE);
    CHECK(std::string(granit_config_error(cfg)).find("bogus.key") !=
          std::string::npos);

    CHECK(granit_config_set(cfg, nullptr) == GRANIT_ERROR_USAGE);
    CHECK(granit_config_load(cfg, "/definitely/not/here.cfg") ==
          GRANIT_ERROR_USAGE);

    CHECK(granit_config_set(cfg, "transition.n_states = 99") == GRANIT_OK);
    CHECK(granit_config_validate(cfg) == GRANIT_ERROR_USAGE);
    CHECK(granit_config_set(cfg, "transition.n_states = 4") == GRANIT_OK);
    CHECK(granit_config_validate(cfg) == GRANIT_OK);

    granit_config_destroy(cfg);
    granit_config_destroy(nullptr);  // must be a no-op
}

TEST_CASE("C API: spectrum helpers") {
    granit_config* cfg = granit_config_create();
    REQUIRE(cfg != nullptr);

    double eps[4] = {};
    REQUIRE(granit_airy_zeros(4, eps) == GRANIT_OK);
    CHECK(eps[0] == doctest::Approx(2.33810741).epsilon(1e-8));
    CHECK(eps[3] == doctest::Approx(6.78670809).epsilon(1e-8));
    CHECK(granit_airy_zeros(0, eps) == GRANIT_ERROR_USAGE);
    CHECK(std::string(granit_last_error()).find("[1, 100]") !=
          std::string::npos);
    CHECK(granit_airy_zeros(4, nullptr) == GRANIT_ERROR_USAGE);

    double z0 = 0.0, f0 = 0.0;
    REQUIRE(granit_bouncer_scales(cfg, &z0, &f0) == GRANIT_OK);
    CHECK(z0 * 1e6 == doctest::Approx(5.868).epsilon(1e-3));
    CHECK(f0 == doctest::Approx(145.511).epsilon(1e-4));

    double f21 = 0.0;
    REQUIRE(granit_transition_frequency(cfg, 2, 1, &f21) == GRANIT_OK);
    CHECK(f21 == doctest::Approx(254.6214).epsilon(1e-5));
    CHECK(granit_transition_frequency(cfg, 2, 2, &f21) == GRANIT_ERROR_USAGE);
    CHECK(granit_transition_frequency(cfg, 0, 1, &f21) == GRANIT_ERROR_USAGE);

    double z12 = 0.0;
    REQUIRE(granit_z_matrix_element(cfg, 1, 2, &z12) == GRANIT_OK);
    CHECK(z12 * 1e6 == doctest::Approx(3.8328).epsilon(1e-4));

    double beta = 0.0;
    REQUIRE(granit_required_gradient(cfg, 2, 1, 0.040, &beta) == GRANIT_OK);
    CHECK(beta == doctest::Approx(0.22368).epsilon(1e-4));
    CHECK(granit_required_gradient(cfg, 2, 1, -1.0, &beta) ==
          GRANIT_ERROR_USAGE);

    double omega = 0.0;
    REQUIRE(granit_rabi_frequency(cfg, 2, 1, beta, &omega) == GRANIT_OK);
    CHECK(omega * 0.040 == doctest::Approx(3.14159265).epsilon(1e-6));

    double pops[4] = {};
    REQUIRE(granit_step_populations(cfg, 1, pops, 4) == GRANIT_OK);
    double sum = 0.0;
    for (double p : pops) sum += p;
    CHECK(sum > 0.5);
    CHECK(sum <= 1.0 + 1e-9);

    granit_config_destroy(cfg);
}

TEST_CASE("C API: magnetostatics") {
    double bx = 0.0, bz = 0.0;
    REQUIRE(granit_square_wire_field(0.0, 2e-3, 1.0, 1e-3, &bx, &bz) ==
            GRANIT_OK);
    CHECK(bx < 0.0);  // azimuthal field of a +y current, directly above
    CHECK(bz == doctest::Approx(0.0).scale(1.0));
    // inside the conductor: physics failure, not usage
    CHECK(granit_square_wire_field(0.0, 0.0, 1.0, 1e-3, &bx, &bz) ==
          GRANIT_ERROR_RUNTIME);

    double gx = 0.0, gz = 0.0;
    REQUIRE(granit_square_wire_gradient(0.0, 2e-3, 1.0, 1e-3, &gx, &gz) ==
            GRANIT_OK);

    granit_config* cfg = granit_config_create();
    REQUIRE(cfg != nullptr);
    granit_field_sample s;
    REQUIRE(granit_array_field(cfg, 0.0, 0.0, &s) == GRANIT_OK);
    CHECK(s.grad_defined == 1);

    double beta_hat = 0.0, B1 = 0.0;
    REQUIRE(granit_extract_excitation(cfg, &beta_hat, &B1) == GRANIT_OK);
    CHECK(beta_hat == doctest::Approx(0.5259).epsilon(2e-3));
    CHECK(B1 * 1e3 == doctest::Approx(0.8365).epsilon(2e-3));
    granit_config_destroy(cfg);
}

TEST_CASE("C API: eigen driver writes the report") {
    granit_config* cfg = granit_config_create();
    REQUIRE(cfg != nullptr);
    const auto dir = temp_dir("capi_eigen");
    std::string report(1 << 14, '\0');
    REQUIRE(granit_run_eigen(cfg, dir.string().c_str(), report.data(),
                             report.size()) == GRANIT_OK);
    CHECK(report.find("f21") != std::string::npos);
    CHECK(fs::exists(dir / "eigen_report.txt"));
    // tiny buffer still gets a NUL-terminated prefix
    char small[8];
    REQUIRE(granit_run_eigen(cfg, nullptr, small, sizeof(small)) == GRANIT_OK);
    CHECK(std::string(small).size() == 7);
    granit_config_destroy(cfg);
}

TEST_CASE("CLI: exit codes and outputs") {
    CHECK(run_cli("") == 2);                      // missing subcommand
    CHECK(run_cli("eigen --set bogus.key=1") == 2);
    CHECK(run_cli("eigen --format yaml") == 2);
    CHECK(run_cli("eigen --config /not/a/file.cfg") == 2);
    CHECK(run_cli("--help") == 0);

    const auto dir = temp_dir("cli_eigen");
    CHECK(run_cli("eigen --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "eigen_report.txt"));

    const auto fm = temp_dir("cli_fieldmap");
    CHECK(run_cli("fieldmap --format json --set fieldmap.n_points=21 --out " +
                  fm.string()) == 0);
    CHECK(fs::exists(fm / "fieldmap.json"));
    CHECK_FALSE(fs::exists(fm / "fieldmap.csv"));

    // config file + override round trip
    const auto rc = temp_dir("cli_cfg");
    CHECK(run_cli("eigen --config " + std::string(GRANIT_CONFIG_EXAMPLE) +
                  " --set prep.step_height_um=10 --out " + rc.string()) == 0);
    CHECK(fs::exists(rc / "eigen_report.txt"));
}
