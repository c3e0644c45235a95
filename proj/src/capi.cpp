#include "granit.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "core/airy.hpp"
#include "core/bouncer.hpp"
#include "core/config.hpp"
#include "core/studies.hpp"

struct granit_config {
    granit::RunConfig cfg;
    mutable std::string error;
};

namespace {

thread_local std::string t_last_error;

void record(const granit_config* handle, const std::string& msg) {
    t_last_error = msg;
    if (handle) handle->error = msg;
}

// Maps exceptions to status codes: configuration / argument problems are
// usage errors, everything else is a runtime failure.
template <typename F>
granit_status guarded(const granit_config* handle, F&& f) {
    try {
        f();
        record(handle, "");
        return GRANIT_OK;
    } catch (const granit::ConfigError& e) {
        record(handle, e.what());
        return GRANIT_ERROR_USAGE;
    } catch (const std::invalid_argument& e) {
        record(handle, e.what());
        return GRANIT_ERROR_USAGE;
    } catch (const std::out_of_range& e) {
        record(handle, e.what());
        return GRANIT_ERROR_USAGE;
    } catch (const std::exception& e) {
        record(handle, e.what());
        return GRANIT_ERROR_RUNTIME;
    }
}

granit_status require(bool ok, const granit_config* handle, const char* msg) {
    if (ok) return GRANIT_OK;
    record(handle, msg);
    return GRANIT_ERROR_USAGE;
}

void copy_report(const std::string& text, char* report, size_t report_cap) {
    if (report == nullptr || report_cap == 0) return;
    const size_t n = std::min(text.size(), report_cap - 1);
    std::memcpy(report, text.data(), n);
    report[n] = '\0';
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write output file " + path.string());
    }
    out << content;
}

granit::BouncerSpectrum make_spectrum(const granit_config* cfg) {
    cfg->cfg.validate();
    return granit::BouncerSpectrum(cfg->cfg.constants, cfg->cfg.n_states);
}

}  // namespace

extern "C" {

granit_config* granit_config_create(void) {
    try {
        return new granit_config();
    } catch (...) {
        return nullptr;
    }
}

void granit_config_destroy(granit_config* cfg) { delete cfg; }

granit_status granit_config_load(granit_config* cfg, const char* path) {
    if (auto s = require(cfg && path, cfg, "null argument")) return s;
    return guarded(cfg, [&] { cfg->cfg.load_file(path); });
}

granit_status granit_config_set(granit_config* cfg, const char* assignment) {
    if (auto s = require(cfg && assignment, cfg, "null argument")) return s;
    return guarded(cfg, [&] { cfg->cfg.set_line(assignment); });
}

granit_status granit_config_validate(const granit_config* cfg) {
    if (auto s = require(cfg != nullptr, cfg, "null handle")) return s;
    return guarded(cfg, [&] { cfg->cfg.validate(); });
}

const char* granit_config_error(const granit_config* cfg) {
    return cfg ? cfg->error.c_str() : "null handle";
}

const char* granit_last_error(void) { return t_last_error.c_str(); }

granit_status granit_airy_zeros(int n, double* out) {
    if (auto s = require(out != nullptr, nullptr, "null output")) return s;
    return guarded(nullptr, [&] {
        const auto eps = granit::airy::negative_zeros(n);
        std::memcpy(out, eps.data(), eps.size() * sizeof(double));
    });
}

granit_status granit_bouncer_scales(const granit_config* cfg, double* z0_m,
                                    double* f0_hz) {
    if (auto s = require(cfg && z0_m && f0_hz, cfg, "null argument")) return s;
    return guarded(cfg, [&] {
        const auto sp = make_spectrum(cfg);
        *z0_m = sp.z0();
        *f0_hz = sp.f0();
    });
}

granit_status granit_transition_frequency(const granit_config* cfg, int n,
                                          int m, double* out_hz) {
    if (auto s = require(cfg && out_hz, cfg, "null argument")) return s;
    return guarded(cfg, [&] {
        *out_hz = make_spectrum(cfg).transition_frequency(n, m);
    });
}

granit_status granit_z_matrix_element(const granit_config* cfg, int n, int m,
                                      double* out_m) {
    if (auto s = require(cfg && out_m, cfg, "null argument")) return s;
    return guarded(cfg,
                   [&] { *out_m = make_spectrum(cfg).z_matrix_element(n, m); });
}

granit_status granit_required_gradient(const granit_config* cfg, int n, int m,
                                       double excitation_time_s,
                                       double* out_T_per_m) {
    if (auto s = require(cfg && out_T_per_m, cfg, "null argument")) return s;
    return guarded(cfg, [&] {
        *out_T_per_m =
            make_spectrum(cfg).required_gradient(n, m, excitation_time_s);
    });
}

granit_status granit_rabi_frequency(const granit_config* cfg, int n, int m,
                                    double beta_T_per_m, double* out_rad_s) {
    if (auto s = require(cfg && out_rad_s, cfg, "null argument")) return s;
    return guarded(cfg, [&] {
        *out_rad_s = make_spectrum(cfg).rabi_frequency(n, m, beta_T_per_m);
    });
}

granit_status granit_step_populations(const granit_config* cfg,
                                      int incoming_state, double* out,
                                      int n_out) {
    if (auto s = require(cfg && out && n_out >= 1, cfg, "null argument")) {
        return s;
    }
    return guarded(cfg, [&] {
        const auto sp = make_spectrum(cfg);
        const auto p = granit::step_populations(sp, cfg->cfg.step_height,
                                                incoming_state);
        for (int i = 0; i < n_out; ++i) {
            out[i] = i < static_cast<int>(p.size()) ? p[static_cast<size_t>(i)]
                                                    : 0.0;
        }
    });
}

granit_status granit_square_wire_field(double x_m, double z_m, double current_A,
                                       double side_m, double* Bx_T,
                                       double* Bz_T) {
    if (auto s = require(Bx_T && Bz_T, nullptr, "null output")) return s;
    return guarded(nullptr, [&] {
        const auto [bx, bz] = granit::square_wire_field(
            x_m, z_m, current_A, side_m, granit::PhysicalConstants{}.mu0);
        *Bx_T = bx;
        *Bz_T = bz;
    });
}

granit_status granit_square_wire_gradient(double x_m, double z_m,
                                          double current_A, double side_m,
                                          double* dBxdz_T_per_m,
                                          double* dBzdz_T_per_m) {
    if (auto s = require(dBxdz_T_per_m && dBzdz_T_per_m, nullptr, "null output")) {
        return s;
    }
    return guarded(nullptr, [&] {
        const auto [gx, gz] = granit::square_wire_gradient(
            x_m, z_m, current_A, side_m, granit::PhysicalConstants{}.mu0);
        *dBxdz_T_per_m = gx;
        *dBzdz_T_per_m = gz;
    });
}

granit_status granit_array_field(const granit_config* cfg, double x_m,
                                 double z_m, granit_field_sample* out) {
    if (auto s = require(cfg && out, cfg, "null argument")) return s;
    return guarded(cfg, [&] {
        const auto f = granit::array_field(cfg->cfg.array, x_m, z_m);
        *out = {f.x, f.Bx, f.Bz, f.dBx_dz, f.dBz_dz, f.grad_absB,
                f.grad_defined ? 1 : 0};
    });
}

granit_status granit_extract_excitation(const granit_config* cfg,
                                        double* beta_hat_T_per_m,
                                        double* B1_T) {
    if (auto s = require(cfg && beta_hat_T_per_m && B1_T, cfg, "null argument")) {
        return s;
    }
    return guarded(cfg, [&] {
        const auto ex = granit::extract_excitation_params(cfg->cfg.array);
        *beta_hat_T_per_m = ex.beta_hat;
        *B1_T = ex.B1;
    });
}

granit_status granit_run_eigen(const granit_config* cfg, const char* out_dir,
                               char* report, size_t report_cap) {
    if (auto s = require(cfg != nullptr, cfg, "null handle")) return s;
    return guarded(cfg, [&] {
        const auto r = granit::run_eigen(cfg->cfg);
        if (out_dir) write_file(out_dir, "eigen_report.txt", r.text);
        copy_report(r.text, report, report_cap);
    });
}

granit_status granit_run_fieldmap(const granit_config* cfg, const char* out_dir,
                                  char* report, size_t report_cap) {
    if (auto s = require(cfg != nullptr, cfg, "null handle")) return s;
    return guarded(cfg, [&] {
        const auto r = granit::run_fieldmap(cfg->cfg);
        const bool json = cfg->cfg.output_format == "json";
        if (out_dir) {
            write_file(out_dir, json ? "fieldmap.json" : "fieldmap.csv",
                       json ? r.json : r.csv);
        }
        copy_report("fieldmap: " + std::to_string(r.samples.size()) +
                        " samples\n",
                    report, report_cap);
    });
}

granit_status granit_run_adiabaticity(const granit_config* cfg,
                                      const char* out_dir, char* report,
                                      size_t report_cap) {
    if (auto s = require(cfg != nullptr, cfg, "null handle")) return s;
    return guarded(cfg, [&] {
        const auto r = granit::run_adiabaticity(cfg->cfg);
        const bool json = cfg->cfg.output_format == "json";
        if (out_dir) {
            write_file(out_dir, json ? "adiabaticity.json" : "adiabaticity.csv",
                       json ? r.json : r.csv);
        }
        copy_report("adiabaticity: " + std::to_string(r.points.size()) +
                        " grid cells\n",
                    report, report_cap);
    });
}

granit_status granit_run_resonance(const granit_config* cfg,
                                   const char* out_dir, char* report,
                                   size_t report_cap) {
    if (auto s = require(cfg != nullptr, cfg, "null handle")) return s;
    return guarded(cfg, [&] {
        const auto r = granit::run_resonance(cfg->cfg);
        const bool json = cfg->cfg.output_format == "json";
        if (out_dir) {
            write_file(out_dir, json ? "resonance.json" : "resonance.csv",
                       json ? r.json : r.csv);
            write_file(out_dir, "resonance_report.txt", r.report);
        }
        copy_report(r.report, report, report_cap);
    });
}

}  // extern "C"
