#include "studies.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace granit {

std::string format_g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

namespace {

constexpr double kPeV = 1.602176634e-31;  // J per peV

}  // namespace

EigenReport run_eigen(const RunConfig& config) {
    config.validate();
    BouncerSpectrum spectrum(config.constants, config.n_states);

    EigenReport r;
    r.epsilon = spectrum.epsilon();
    r.z0_um = spectrum.z0() * 1e6;
    r.f0_Hz = spectrum.f0();
    for (int n = 1; n <= spectrum.n_states(); ++n) {
        r.energies_peV.push_back(spectrum.energy(n) / kPeV);
    }
    r.f21_Hz = spectrum.transition_frequency(2, 1);
    r.f31_Hz = spectrum.n_states() >= 3 ? spectrum.transition_frequency(3, 1)
                                        : 0.0;
    for (int n = 1; n <= spectrum.n_states(); ++n) {
        std::vector<double> row;
        for (int m = 1; m <= spectrum.n_states(); ++m) {
            row.push_back(spectrum.z_matrix_element(n, m) * 1e6);
        }
        r.z_matrix_um.push_back(std::move(row));
    }
    const double t0 = config.length / config.velocity.mean;
    r.beta_needed_21_T_per_m = spectrum.required_gradient(2, 1, t0);
    r.beta_needed_31_T_per_m = spectrum.n_states() >= 3
                                   ? spectrum.required_gradient(3, 1, t0)
                                   : 0.0;
    r.step_populations = step_populations_slit_ensemble(
        spectrum, config.step_height, config.slit_height);

    std::ostringstream os;
    os << "quantum bouncer eigensystem\n";
    os << "  z0   = " << format_g9(r.z0_um) << " um\n";
    os << "  f0   = " << format_g9(r.f0_Hz) << " Hz\n";
    os << "  f21  = " << format_g9(r.f21_Hz) << " Hz\n";
    if (spectrum.n_states() >= 3) {
        os << "  f31  = " << format_g9(r.f31_Hz) << " Hz\n";
    }
    os << "  n  eps_n        E_n [peV]\n";
    for (int n = 1; n <= spectrum.n_states(); ++n) {
        os << "  " << n << "  " << format_g9(r.epsilon[n - 1]) << "  "
           << format_g9(r.energies_peV[n - 1]) << "\n";
    }
    os << "  <n|z|m> [um]:\n";
    for (const auto& row : r.z_matrix_um) {
        os << "   ";
        for (double v : row) os << " " << format_g9(v);
        os << "\n";
    }
    os << "  beta_needed(2->1, t0=" << format_g9(t0 * 1e3)
       << " ms) = " << format_g9(r.beta_needed_21_T_per_m) << " T/m\n";
    if (spectrum.n_states() >= 3) {
        os << "  beta_needed(3->1) = " << format_g9(r.beta_needed_31_T_per_m)
           << " T/m\n";
    }
    os << "  step populations (h = " << format_g9(config.step_height * 1e6)
       << " um, slit " << format_g9(config.slit_height * 1e6) << " um):";
    for (double p : r.step_populations) os << " " << format_g9(p);
    os << "\n";
    r.text = os.str();
    return r;
}

FieldMapResult run_fieldmap(const RunConfig& config) {
    config.validate();
    FieldMapResult r;
    r.samples = field_map(config.array, config.fieldmap_z, config.fieldmap_x_min,
                          config.fieldmap_x_max, config.fieldmap_n_points);
    std::ostringstream os;
    os << "x_mm,Bx_mT,Bz_mT,dBxdz_Tpm,dBzdz_Tpm,gradAbsB_Tpm\n";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& s : r.samples) {
        os << format_g9(s.x * 1e3) << "," << format_g9(s.Bx * 1e3) << ","
           << format_g9(s.Bz * 1e3) << "," << format_g9(s.dBx_dz) << ","
           << format_g9(s.dBz_dz) << "," << format_g9(s.grad_absB) << "\n";
        rows.push_back({{"x_mm", s.x * 1e3},
                        {"Bx_mT", s.Bx * 1e3},
                        {"Bz_mT", s.Bz * 1e3},
                        {"dBxdz_Tpm", s.dBx_dz},
                        {"dBzdz_Tpm", s.dBz_dz},
                        {"gradAbsB_Tpm", s.grad_absB},
                        {"grad_defined", s.grad_defined}});
    }
    r.csv = os.str();
    r.json = rows.dump(2);
    return r;
}

AdiabaticityResult run_adiabaticity(const RunConfig& config) {
    config.validate();
    AdiabaticityScanParams params;
    params.B0y_values = config.adiabaticity_B0y;
    params.frequencies = config.adiabaticity_grid();
    params.velocity = config.velocity;
    params.phase_samples = config.phase_samples;
    params.B1 = config.B1;
    params.spatial_period = 8.0 * config.array.pitch();
    params.length = config.length;
    params.step = config.bloch_step;
    params.workers = config.workers;

    AdiabaticityResult r;
    r.points = adiabaticity_scan(config.constants, params);
    std::ostringstream os;
    os << "B0y_mT,f_Hz,pmax_avg\n";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& p : r.points) {
        os << format_g9(p.B0y * 1e3) << "," << format_g9(p.f) << ","
           << format_g9(p.p_max_avg) << "\n";
        rows.push_back({{"B0y_mT", p.B0y * 1e3},
                        {"f_Hz", p.f},
                        {"pmax_avg", p.p_max_avg}});
    }
    r.csv = os.str();
    r.json = rows.dump(2);
    return r;
}

ResonanceResult run_resonance(const RunConfig& config) {
    config.validate();
    BouncerSpectrum spectrum(config.constants, config.n_states);

    ResonanceResult r;
    r.derived_from_array = config.derive_excitation_from_array;
    if (config.derive_excitation_from_array) {
        const auto ex = extract_excitation_params(config.array);
        r.beta_hat_used = ex.beta_hat;
        r.B1_used = ex.B1;
    } else {
        r.beta_hat_used = config.beta_hat;
        r.B1_used = config.B1;
    }

    ResonanceParams params;
    params.driving_frequencies = config.resonance_grid();
    params.excitation = {r.beta_hat_used, r.B1_used, config.B0y};
    params.velocity = config.velocity;
    params.phase_samples = config.phase_samples;
    params.initial_state = config.initial_state;
    params.length = config.length;
    params.step = config.schrodinger_step;
    params.workers = config.workers;
    r.curve = resonance_curve(spectrum, params);
    r.peaks = find_peaks(r.curve);
    r.f12_true_Hz = spectrum.transition_frequency(2, 1);

    std::ostringstream os;
    os << "f_Hz,P_avg,P_spin_up,P_spin_down\n";
    for (std::size_t i = 0; i < r.curve.driving_frequencies.size(); ++i) {
        os << format_g9(r.curve.driving_frequencies[i]) << ","
           << format_g9(r.curve.probability[i]) << ","
           << format_g9(r.curve.probability_spin_up[i]) << ","
           << format_g9(r.curve.probability_spin_down[i]) << "\n";
    }
    r.csv = os.str();

    nlohmann::json report;
    std::ostringstream rep;
    if (r.peaks.found_plus && r.peaks.found_minus) {
        r.f12_extracted_Hz =
            extract_unperturbed_frequency(r.peaks.f_plus, r.peaks.f_minus);
        r.bias_Hz = r.f12_extracted_Hz - r.f12_true_Hz;
        rep << "f_plus = " << format_g9(r.peaks.f_plus) << "\n";
        rep << "f_minus = " << format_g9(r.peaks.f_minus) << "\n";
        rep << "f12_extracted = " << format_g9(r.f12_extracted_Hz) << "\n";
        rep << "f12_true = " << format_g9(r.f12_true_Hz) << "\n";
        rep << "bias = " << format_g9(r.bias_Hz) << "\n";
        report["f_plus"] = r.peaks.f_plus;
        report["f_minus"] = r.peaks.f_minus;
        report["f12_extracted"] = r.f12_extracted_Hz;
        report["f12_true"] = r.f12_true_Hz;
        report["bias"] = r.bias_Hz;
    } else {
        rep << "no_peak = true\n";
        rep << "f12_true = " << format_g9(r.f12_true_Hz) << "\n";
        report["no_peak"] = true;
        report["f12_true"] = r.f12_true_Hz;
    }
    if (r.derived_from_array) {
        rep << "beta_hat_derived = " << format_g9(r.beta_hat_used) << "\n";
        rep << "B1_derived_mT = " << format_g9(r.B1_used * 1e3) << "\n";
        report["beta_hat_derived"] = r.beta_hat_used;
        report["B1_derived_mT"] = r.B1_used * 1e3;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < r.curve.driving_frequencies.size(); ++i) {
        rows.push_back({{"f_Hz", r.curve.driving_frequencies[i]},
                        {"P_avg", r.curve.probability[i]},
                        {"P_spin_up", r.curve.probability_spin_up[i]},
                        {"P_spin_down", r.curve.probability_spin_down[i]}});
    }
    report["curve"] = std::move(rows);
    r.report = rep.str();
    r.json = report.dump(2);
    return r;
}

}  // namespace granit
