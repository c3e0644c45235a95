#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "spin.hpp"
#include "transitions.hpp"

namespace granit {

// Study drivers shared by the C API and the command line tool.  Every
// driver validates the full configuration before computing anything and
// writes deterministic output (9 significant digits, fixed column order)
// regardless of the worker count.

struct EigenReport {
    std::vector<double> epsilon;
    double z0_um;
    double f0_Hz;
    std::vector<double> energies_peV;
    double f21_Hz;
    double f31_Hz;
    std::vector<std::vector<double>> z_matrix_um;  // <n|z|m>
    double beta_needed_21_T_per_m;  // pi pulse over L / v_mean
    double beta_needed_31_T_per_m;
    std::vector<double> step_populations;
    std::string text;  // printable table
};

EigenReport run_eigen(const RunConfig& config);

struct FieldMapResult {
    std::vector<FieldSample> samples;
    std::string csv;  // x_mm,Bx_mT,Bz_mT,dBxdz_Tpm,dBzdz_Tpm,gradAbsB_Tpm
    std::string json;
};

FieldMapResult run_fieldmap(const RunConfig& config);

struct AdiabaticityResult {
    std::vector<AdiabaticityPoint> points;
    std::string csv;  // B0y_mT,f_Hz,pmax_avg
    std::string json;
};

AdiabaticityResult run_adiabaticity(const RunConfig& config);

struct ResonanceResult {
    ResonanceCurve curve;
    ResonancePeaks peaks;
    double beta_hat_used;  // T/m (possibly derived from the array)
    double B1_used;        // T
    bool derived_from_array;
    double f12_extracted_Hz = 0.0;
    double f12_true_Hz = 0.0;
    double bias_Hz = 0.0;
    std::string csv;     // f_Hz,P_avg,P_spin_up,P_spin_down
    std::string report;  // key-value summary
    std::string json;
};

ResonanceResult run_resonance(const RunConfig& config);

// Serialize a double with 9 significant digits (shared CSV convention).
std::string format_g9(double x);

}  // namespace granit
