#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "core/transitions.hpp"

using granit::BouncerSpectrum;
using granit::FourierCoefficients;
using granit::GradientWaveform;
using granit::PhysicalConstants;
using granit::ResonanceCurve;
using granit::ResonanceParams;
using granit::fourier_coefficients;
using granit::integrate_amplitudes;

namespace {

const PhysicalConstants kC{};

GradientWaveform benchmark_waveform() {
    GradientWaveform w;
    w.beta_hat = 0.52;
    w.B1 = 0.8e-3;
    w.B0y = 0.3e-3;
    return w;
}

}  // namespace

TEST_CASE("waveform value: limits and periodicity") {
    auto w = benchmark_waveform();
    // peak value at cos = 1
    const double peak = w.beta_hat * w.B1 / std::hypot(w.B1, w.B0y);
    CHECK(w.value(0.0) == doctest::Approx(peak).epsilon(1e-12));
    // zero when the oscillating field crosses zero
    w.phase = 0.5 * std::numbers::pi;
    CHECK(w.value(0.0) == doctest::Approx(0.0).scale(1.0));
    // period is half the driving period
    w.phase = 0.3;
    const double T = 0.5 / w.driving_frequency;
    CHECK(w.value(1.234e-3) == doctest::Approx(w.value(1.234e-3 + T)).epsilon(1e-12));
    // vanishing holding field: beta = beta_hat |cos|
    w.B0y = 0.0;
    w.phase = 0.0;
    CHECK(w.value(1.0e-3) ==
          doctest::Approx(w.beta_hat *
                          std::abs(std::cos(2.0 * std::numbers::pi *
                                            w.driving_frequency * 1.0e-3)))
              .epsilon(1e-12));
}

TEST_CASE("Fourier coefficients: exact B0y = 0 series") {
    // With B0y = 0 the waveform is beta_hat |cos|, whose cosine series is
    // known in closed form: 2/pi, 4/(3 pi), -4/(15 pi), ...
    auto w = benchmark_waveform();
    w.B0y = 0.0;
    // the kinks of |cos| limit the trapezoid rule to algebraic convergence
    const auto fc = fourier_coefficients(w, 2, 32768);
    CHECK(fc.beta0 ==
          doctest::Approx(w.beta_hat * 2.0 / std::numbers::pi).epsilon(1e-6));
    CHECK(fc.beta1 ==
          doctest::Approx(w.beta_hat * 4.0 / (3.0 * std::numbers::pi))
              .epsilon(1e-6));
    REQUIRE(fc.higher.size() == 1);
    CHECK(fc.higher[0] ==
          doctest::Approx(-w.beta_hat * 4.0 / (15.0 * std::numbers::pi))
              .epsilon(1e-5));
}

TEST_CASE("Fourier coefficients at the benchmark point") {
    const auto fc = fourier_coefficients(benchmark_waveform());
    CHECK(std::abs(fc.beta0 - 0.289) < 0.003);
    CHECK(std::abs(fc.beta1 - 0.228) < 0.003);
    // refined oracle values
    CHECK(fc.beta0 == doctest::Approx(0.28904).epsilon(1e-4));
    CHECK(fc.beta1 == doctest::Approx(0.22844).epsilon(1e-4));
    // quadrature already converged: 10x the resolution moves nothing
    const auto fine = fourier_coefficients(benchmark_waveform(), 1, 40960);
    CHECK(std::abs(fc.beta0 - fine.beta0) < 1e-9);
    CHECK(std::abs(fc.beta1 - fine.beta1) < 1e-9);
    CHECK_THROWS_AS(fourier_coefficients(benchmark_waveform(), 0),
                    std::invalid_argument);
}

TEST_CASE("free evolution is a pure phase") {
    BouncerSpectrum sp(kC);
    auto w = benchmark_waveform();
    w.beta_hat = 0.0;
    const double v = 4.0, L = 0.16;
    const auto a = integrate_amplitudes(sp, w, 1, v, 2, L, 4e-6);
    REQUIRE(a.size() == 4);
    const double phase = -sp.energy(2) / kC.hbar * (L / v);
    CHECK(std::abs(a[1] - std::polar(1.0, phase)) < 1e-6);
    CHECK(std::abs(a[0]) < 1e-12);
    CHECK(std::abs(a[2]) < 1e-12);
    CHECK(std::abs(a[3]) < 1e-12);
}

TEST_CASE("unitarity under the benchmark drive") {
    BouncerSpectrum sp(kC);
    auto w = benchmark_waveform();
    w.driving_frequency = 127.0;
    for (int spin : {1, -1}) {
        const auto a = integrate_amplitudes(sp, w, spin, 4.0, 2, 0.16, 4e-6);
        double norm = 0.0;
        for (const auto& c : a) norm += std::norm(c);
        CHECK(std::abs(norm - 1.0) < 1e-6);
    }
}

TEST_CASE("step halving converges below 1e-5") {
    BouncerSpectrum sp(kC);
    auto w = benchmark_waveform();
    w.driving_frequency = 127.0;
    const auto a = integrate_amplitudes(sp, w, 1, 4.0, 2, 0.16, 4e-6);
    const auto b = integrate_amplitudes(sp, w, 1, 4.0, 2, 0.16, 2e-6);
    for (std::size_t n = 0; n < a.size(); ++n) {
        CHECK(std::abs(std::norm(a[n]) - std::norm(b[n])) < 1e-5);
    }
}

TEST_CASE("solver guard rails") {
    BouncerSpectrum sp(kC);
    const auto w = benchmark_waveform();
    CHECK_THROWS_AS(integrate_amplitudes(sp, w, 0, 4.0, 2, 0.16, 4e-6),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_amplitudes(sp, w, 1, -4.0, 2, 0.16, 4e-6),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_amplitudes(sp, w, 1, 4.0, 9, 0.16, 4e-6),
                    std::out_of_range);
    // step far beyond the fastest phase rate
    CHECK_THROWS_AS(integrate_amplitudes(sp, w, 1, 4.0, 2, 0.16, 1e-3),
                    std::invalid_argument);
}

TEST_CASE("two-level reduction reproduces the Rabi formula") {
    // Weak drive on a 2-state system; the counter-rotating error scales
    // as (C / 2 omega)^2 and is far below the 1e-3 budget.
    BouncerSpectrum sp(kC, 2);
    const double gamma = kC.gamma();
    const double z12 = std::abs(sp.z_matrix_element(1, 2));
    const double z11 = sp.z_matrix_element(1, 1);
    const double z22 = sp.z_matrix_element(2, 2);

    auto w = benchmark_waveform();
    w.beta_hat = 0.01;
    const auto fc = fourier_coefficients(w, 1);

    const double L = 0.16, v = 0.4;  // slow passage, t = 0.4 s
    const double t = L / v;
    for (int spin : {1, -1}) {
        const double s = static_cast<double>(spin);
        // DC part of the gradient shifts the two levels
        const double omega21 = (sp.energy(2) - sp.energy(1)) / kC.hbar +
                               0.5 * s * gamma * fc.beta0 * (z22 - z11);
        const double C = 0.5 * gamma * fc.beta1 * z12;  // drive amplitude

        for (double delta : {0.0, C, -2.0 * C}) {
            const double Omega = omega21 + delta;  // excitation angular freq
            w.driving_frequency = Omega / (4.0 * std::numbers::pi);
            const auto a = integrate_amplitudes(sp, w, spin, v, 2, L, 1e-5);
            const double g = std::hypot(0.5 * C, 0.5 * delta);
            const double predicted = 0.25 * C * C / (g * g) *
                                     std::pow(std::sin(g * t), 2);
            CAPTURE(spin);
            CAPTURE(delta);
            CHECK(std::abs(std::norm(a[0]) - predicted) < 1e-3);
        }
    }
}

TEST_CASE("peak finding on synthetic curves") {
    ResonanceCurve curve;
    for (double f = 100.0; f <= 160.0 + 1e-9; f += 0.5) {
        curve.driving_frequencies.push_back(f);
        const auto g = [f](double f0, double amp) {
            const double u = (f - f0) / 4.0;
            return amp * std::exp(-u * u);
        };
        curve.probability_spin_up.push_back(g(141.7, 0.3));
        curve.probability_spin_down.push_back(g(113.0 + 9.0, 0.25));  // 122.0
    }
    curve.probability.resize(curve.driving_frequencies.size(), 0.0);
    const auto peaks = granit::find_peaks(curve);
    REQUIRE(peaks.found_plus);
    REQUIRE(peaks.found_minus);
    CHECK(peaks.f_plus == doctest::Approx(141.7).epsilon(1e-4));
    CHECK(peaks.f_minus == doctest::Approx(122.0).epsilon(1e-4));

    // a flat curve below the noise floor yields no peak
    ResonanceCurve flat;
    flat.driving_frequencies = {100.0, 101.0, 102.0};
    flat.probability_spin_up = {1e-5, 2e-5, 1e-5};
    flat.probability_spin_down = {0.0, 0.0, 0.0};
    const auto none = granit::find_peaks(flat);
    CHECK_FALSE(none.found_plus);
    CHECK_FALSE(none.found_minus);
}

TEST_CASE("spin-split prediction and frequency extraction") {
    BouncerSpectrum sp(kC);
    // no DC gradient: degenerate
    const auto [fp0, fm0] = granit::stern_gerlach_prediction(sp, 0.0, 2, 1);
    CHECK(fp0 == doctest::Approx(sp.transition_frequency(2, 1)).epsilon(1e-12));
    CHECK(fm0 == doctest::Approx(fp0).epsilon(1e-12));

    const double beta0 = 0.289;
    const auto [fp, fm] = granit::stern_gerlach_prediction(sp, beta0, 2, 1);
    CHECK(fp > sp.transition_frequency(2, 1));
    CHECK(fm < sp.transition_frequency(2, 1));
    const double x = kC.mu_neutron * beta0 / (kC.neutron_mass * kC.g_local);
    CHECK(fp == doctest::Approx(sp.transition_frequency(2, 1) *
                                std::pow(1.0 + x, 2.0 / 3.0))
                    .epsilon(1e-12));

    // the extraction formula inverts the split exactly: driving-frequency
    // peaks sit at f_nm (1 +- x)^(2/3) / 2
    const double rec = granit::extract_unperturbed_frequency(0.5 * fp, 0.5 * fm);
    CHECK(rec == doctest::Approx(sp.transition_frequency(2, 1)).epsilon(1e-12));

    // gravity reversal is rejected
    CHECK_THROWS_AS(granit::stern_gerlach_prediction(sp, 2.0, 2, 1),
                    std::domain_error);
    CHECK_THROWS_AS(granit::extract_unperturbed_frequency(-1.0, 100.0),
                    std::invalid_argument);
}

TEST_CASE("resonance curve: determinism and spin asymmetry") {
    BouncerSpectrum sp(kC);
    ResonanceParams params;
    params.driving_frequencies = {113.0, 142.0};
    params.phase_samples = 4;
    params.velocity.nodes = 3;
    params.workers = 1;
    const auto serial = resonance_curve(sp, params);
    params.workers = 4;
    const auto parallel = resonance_curve(sp, params);
    for (std::size_t i = 0; i < serial.probability.size(); ++i) {
        CHECK(serial.probability_spin_up[i] == parallel.probability_spin_up[i]);
        CHECK(serial.probability_spin_down[i] ==
              parallel.probability_spin_down[i]);
        CHECK(serial.probability[i] ==
              doctest::Approx(0.5 * (serial.probability_spin_up[i] +
                                     serial.probability_spin_down[i]))
                  .epsilon(1e-12));
    }
    // near the spin-up resonance the spin-up response dominates, and the
    // other way round near the spin-down resonance
    CHECK(serial.probability_spin_up[1] > serial.probability_spin_down[1]);
    CHECK(serial.probability_spin_down[0] > serial.probability_spin_up[0]);
}
