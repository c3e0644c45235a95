#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bouncer.hpp"
#include "velocity.hpp"

namespace granit {

// Time-dependent gradient amplitude seen under AC drive, eq. of the
// homogeneous-gradient configuration:
//   beta(t) = beta_hat B1 cos^2(th) / sqrt(B1^2 cos^2(th) + B0y^2),
//   th = 2 pi f t + phi.
// The excitation frequency is twice the driving frequency f.
struct GradientWaveform {
    double beta_hat = 0.52;   // T/m
    double B1 = 0.8e-3;       // T
    double B0y = 0.3e-3;      // T
    double driving_frequency = 100.0;  // Hz
    double phase = 0.0;       // rad

    double value(double t) const {
        const double c =
            std::cos(2.0 * std::numbers::pi * driving_frequency * t + phase);
        const double c2 = c * c;
        return beta_hat * B1 * c2 / std::sqrt(B1 * B1 * c2 + B0y * B0y);
    }
};

struct FourierCoefficients {
    double beta0;  // T/m, time average
    double beta1;  // T/m, cosine coefficient at angular frequency 4 pi f
    std::vector<double> higher;  // beta2, beta3, ...
};

// Trapezoid quadrature of the Fourier integrals over one waveform
// period; the cosine series is in (4 pi f t + 2 phi).
FourierCoefficients fourier_coefficients(const GradientWaveform& waveform,
                                         int n_harmonics = 1,
                                         int n_samples = 4096);

struct Excitation {
    double beta_hat = 0.52;  // T/m
    double B1 = 0.8e-3;      // T
    double B0y = 0.3e-3;     // T
};

// Amplitudes a_n(L/v) of the truncated Schroedinger system
//   i da_n/dt = (E_n/hbar) a_n + sum_m (s/2) gamma beta(t) <n|z|m> a_m
// integrated with fixed-step RK4 from a_n(0) = delta(n, initial_state).
// All couplings enter, self couplings included.
std::vector<std::complex<double>> integrate_amplitudes(
    const BouncerSpectrum& spectrum, const GradientWaveform& waveform, int spin,
    double velocity, int initial_state, double length, double step);

struct ResonanceCurve {
    std::vector<double> driving_frequencies;  // Hz
    std::vector<double> probability;          // spin-averaged P(2->1)
    std::vector<double> probability_spin_up;
    std::vector<double> probability_spin_down;
};

struct ResonanceParams {
    std::vector<double> driving_frequencies;  // Hz
    Excitation excitation;
    VelocitySpectrum velocity;
    int phase_samples = 16;
    int initial_state = 2;
    double length = 0.16;  // m
    double step = 4.0e-6;  // s
    int workers = 0;
};

// Ground-state arrival probability vs driving frequency, averaged over
// excitation phase, spin and the velocity spectrum.  Per-spin curves are
// retained before the spin average.
ResonanceCurve resonance_curve(const BouncerSpectrum& spectrum,
                               const ResonanceParams& params);

struct ResonancePeaks {
    double f_plus = 0.0;   // Hz, spin-up maximum
    double f_minus = 0.0;  // Hz, spin-down maximum
    bool found_plus = false;
    bool found_minus = false;
};

// Per-spin argmax refined by 3-point quadratic interpolation; a curve
// whose maximum stays below the noise floor yields no peak.
ResonancePeaks find_peaks(const ResonanceCurve& curve,
                          double noise_floor = 1e-3);

// Spin-dependent excitation frequencies of the n->m transition under a
// DC gradient component beta0, via the effective gravity m g +- mu beta0.
// Returns (f_plus_nm, f_minus_nm) in Hz.  Requires mu beta0 < m g.
std::pair<double, double> stern_gerlach_prediction(
    const BouncerSpectrum& spectrum, double beta0, int n, int m);

// Unperturbed transition frequency recovered from the two driving-
// frequency maxima: f = (((2 f+)^{3/2} + (2 f-)^{3/2}) / 2)^{2/3}.
double extract_unperturbed_frequency(double f_plus, double f_minus);

}  // namespace granit
