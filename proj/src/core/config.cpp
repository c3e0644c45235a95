#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace granit {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for '" + key + "': " + v);
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid boolean value for '" + key + "': " + v);
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

constexpr double kNeVPerT = 1.602176634e-28;  // J per neV

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "constants.neutron_mass_kg") {
        constants.neutron_mass = parse_double(key, v);
    } else if (key == "constants.g_local") {
        constants.g_local = parse_double(key, v);
    } else if (key == "constants.hbar_Js") {
        constants.hbar = parse_double(key, v);
    } else if (key == "constants.mu_neutron_neV_per_T") {
        constants.mu_neutron = parse_double(key, v) * kNeVPerT;
    } else if (key == "constants.mu0") {
        constants.mu0 = parse_double(key, v);
        array.mu0 = constants.mu0;
    } else if (key == "array.wire_side_mm") {
        array.wire_side = parse_double(key, v) * 1e-3;
    } else if (key == "array.gap_mm") {
        array.gap = parse_double(key, v) * 1e-3;
    } else if (key == "array.n_wires") {
        array.n_wires = parse_int(key, v);
    } else if (key == "array.standoff_mm") {
        array.standoff = parse_double(key, v) * 1e-3;
    } else if (key == "array.current_I1_A") {
        array.currents[0] = parse_double(key, v);
    } else if (key == "array.current_I2_A") {
        array.currents[1] = parse_double(key, v);
    } else if (key == "array.current_I3_A") {
        array.currents[2] = parse_double(key, v);
    } else if (key == "array.current_I4_A") {
        array.currents[3] = parse_double(key, v);
    } else if (key == "array.external_Bx_mT") {
        array.external_field[0] = parse_double(key, v) * 1e-3;
    } else if (key == "array.external_By_mT") {
        array.external_field[1] = parse_double(key, v) * 1e-3;
    } else if (key == "array.external_Bz_mT") {
        array.external_field[2] = parse_double(key, v) * 1e-3;
    } else if (key == "array.center_fraction") {
        array.center_fraction = parse_double(key, v);
    } else if (key == "excitation.derive_from_array") {
        derive_excitation_from_array = parse_bool(key, v);
        if (derive_excitation_from_array && excitation_set_) {
            throw ConfigError(
                "excitation.derive_from_array conflicts with explicit "
                "excitation parameters");
        }
    } else if (key == "excitation.beta_hat_T_per_m" ||
               key == "excitation.B1_mT") {
        if (derive_excitation_from_array) {
            throw ConfigError("explicit excitation parameters conflict with "
                              "excitation.derive_from_array");
        }
        if (key == "excitation.beta_hat_T_per_m") {
            beta_hat = parse_double(key, v);
        } else {
            B1 = parse_double(key, v) * 1e-3;
        }
        excitation_set_ = true;
    } else if (key == "excitation.B0y_mT") {
        B0y = parse_double(key, v) * 1e-3;
    } else if (key == "velocity.mean_m_per_s") {
        velocity.mean = parse_double(key, v);
    } else if (key == "velocity.sigma_m_per_s") {
        velocity.sigma = parse_double(key, v);
    } else if (key == "velocity.min_m_per_s") {
        velocity.v_min = parse_double(key, v);
    } else if (key == "velocity.max_m_per_s") {
        velocity.v_max = parse_double(key, v);
    } else if (key == "velocity.nodes") {
        velocity.nodes = parse_int(key, v);
    } else if (key == "transition.length_m") {
        length = parse_double(key, v);
    } else if (key == "transition.n_states") {
        n_states = parse_int(key, v);
    } else if (key == "transition.initial_state") {
        initial_state = parse_int(key, v);
    } else if (key == "transition.schrodinger_step_s") {
        schrodinger_step = parse_double(key, v);
    } else if (key == "transition.bloch_step_s") {
        bloch_step = parse_double(key, v);
    } else if (key == "resonance.f_min_Hz") {
        resonance_f_min = parse_double(key, v);
    } else if (key == "resonance.f_max_Hz") {
        resonance_f_max = parse_double(key, v);
    } else if (key == "resonance.f_step_Hz") {
        resonance_f_step = parse_double(key, v);
    } else if (key == "resonance.phase_samples") {
        phase_samples = parse_int(key, v);
    } else if (key == "adiabaticity.B0y_list_mT") {
        adiabaticity_B0y = parse_list(key, v);
        for (auto& b : adiabaticity_B0y) b *= 1e-3;
    } else if (key == "adiabaticity.f_min_Hz") {
        adiabaticity_f_min = parse_double(key, v);
    } else if (key == "adiabaticity.f_max_Hz") {
        adiabaticity_f_max = parse_double(key, v);
    } else if (key == "adiabaticity.f_step_Hz") {
        adiabaticity_f_step = parse_double(key, v);
    } else if (key == "fieldmap.z_mm") {
        fieldmap_z = parse_double(key, v) * 1e-3;
    } else if (key == "fieldmap.x_min_mm") {
        fieldmap_x_min = parse_double(key, v) * 1e-3;
    } else if (key == "fieldmap.x_max_mm") {
        fieldmap_x_max = parse_double(key, v) * 1e-3;
    } else if (key == "fieldmap.n_points") {
        fieldmap_n_points = parse_int(key, v);
    } else if (key == "prep.step_height_um") {
        step_height = parse_double(key, v) * 1e-6;
    } else if (key == "prep.slit_height_um") {
        slit_height = parse_double(key, v) * 1e-6;
    } else if (key == "run.workers") {
        workers = parse_int(key, v);
    } else if (key == "run.output_dir") {
        output_dir = v;
    } else if (key == "run.output_format") {
        if (v != "csv" && v != "json") {
            throw ConfigError("run.output_format must be 'csv' or 'json'");
        }
        output_format = v;
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

void RunConfig::set_line(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("expected KEY=VALUE, got '" + assignment + "'");
    }
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            set_line(line);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " +
                              e.what());
        }
    }
}

void RunConfig::validate() const {
    try {
        constants.validate();
        array.validate();
        velocity.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (beta_hat < 0 || B1 <= 0 || B0y < 0) {
        throw ConfigError("excitation parameters must be nonnegative, B1 > 0");
    }
    if (length <= 0) throw ConfigError("transition.length_m must be > 0");
    if (n_states < 2 || n_states > 16) {
        throw ConfigError("transition.n_states must be in [2, 16]");
    }
    if (initial_state < 1 || initial_state > n_states) {
        throw ConfigError("transition.initial_state out of range");
    }
    if (schrodinger_step <= 0 || bloch_step <= 0) {
        throw ConfigError("solver steps must be > 0");
    }
    if (!(resonance_f_max > resonance_f_min) || resonance_f_step <= 0) {
        throw ConfigError("resonance frequency grid is empty");
    }
    if (!(adiabaticity_f_max >= adiabaticity_f_min) ||
        adiabaticity_f_step <= 0) {
        throw ConfigError("adiabaticity frequency grid is empty");
    }
    for (double b : adiabaticity_B0y) {
        if (b <= 0) throw ConfigError("adiabaticity B0y values must be > 0");
    }
    if (fieldmap_n_points < 2) {
        throw ConfigError("fieldmap.n_points must be >= 2");
    }
    if (!(fieldmap_x_max > fieldmap_x_min)) {
        throw ConfigError("fieldmap x range is empty");
    }
    if (step_height <= 0 || slit_height <= 0) {
        throw ConfigError("prep heights must be > 0");
    }
    if (phase_samples < 4) throw ConfigError("phase_samples must be >= 4");
    if (workers < 0) throw ConfigError("run.workers must be >= 0");
}

namespace {

std::vector<double> make_grid(double lo, double hi, double step) {
    std::vector<double> g;
    const int n = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    g.reserve(static_cast<std::size_t>(std::max(n, 1)));
    for (int i = 0; i < n; ++i) {
        const double f = lo + step * i;
        if (f <= hi + 1e-9 * step) g.push_back(f);
    }
    if (g.empty()) g.push_back(lo);
    return g;
}

}  // namespace

std::vector<double> RunConfig::resonance_grid() const {
    return make_grid(resonance_f_min, resonance_f_max, resonance_f_step);
}

std::vector<double> RunConfig::adiabaticity_grid() const {
    return make_grid(adiabaticity_f_min, adiabaticity_f_max,
                     adiabaticity_f_step);
}

}  // namespace granit
