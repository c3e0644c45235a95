#pragma once

#include <string>
#include <vector>

#include "constants.hpp"
#include "magnetics.hpp"
#include "velocity.hpp"

namespace granit {

// Thrown for malformed or invalid configuration input; maps to the
// usage exit code at the CLI boundary.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full run configuration.  Defaults reproduce the benchmark setup; every
// field can be overridden from the config file or --set KEY=VALUE.
struct RunConfig {
    PhysicalConstants constants;
    WireArrayConfig array;

    // AC excitation; either explicit parameters or derived from the array.
    bool derive_excitation_from_array = false;
    double beta_hat = 0.52;  // T/m
    double B1 = 0.8e-3;      // T
    double B0y = 0.3e-3;     // T

    VelocitySpectrum velocity;

    // Transition region and solver.
    double length = 0.16;             // m
    int n_states = 4;
    int initial_state = 2;
    double schrodinger_step = 4.0e-6;  // s
    double bloch_step = 4.0e-7;        // s

    // Resonance study grid.
    double resonance_f_min = 80.0;   // Hz
    double resonance_f_max = 180.0;  // Hz
    double resonance_f_step = 0.5;   // Hz
    int phase_samples = 16;

    // Adiabaticity study grid.
    std::vector<double> adiabaticity_B0y = {0.05e-3, 0.1e-3, 0.2e-3, 0.3e-3,
                                            1.0e-3};
    double adiabaticity_f_min = 0.0;    // Hz
    double adiabaticity_f_max = 300.0;  // Hz
    double adiabaticity_f_step = 10.0;  // Hz

    // Field map scan.
    double fieldmap_z = 0.0;  // m
    double fieldmap_x_min = -0.08;  // m
    double fieldmap_x_max = 0.08;   // m
    int fieldmap_n_points = 2001;

    // State preparation.
    double step_height = 15.0e-6;  // m
    double slit_height = 25.0e-6;  // m

    // Orchestration.
    int workers = 0;  // 0 = hardware concurrency
    std::string output_dir = ".";
    std::string output_format = "csv";  // csv | json

    // Parse "key = value" lines (# comments) from a file; errors carry
    // the line number.
    void load_file(const std::string& path);
    // Apply one KEY=VALUE override.
    void set(const std::string& key, const std::string& value);
    void set_line(const std::string& assignment);

    // Fails fast on any inconsistent or nonphysical value.
    void validate() const;

    std::vector<double> resonance_grid() const;
    std::vector<double> adiabaticity_grid() const;

  private:
    // Tracks explicit excitation overrides; conflicts with
    // derive_from_array are rejected at parse time.
    bool excitation_set_ = false;
};

}  // namespace granit
