#include "transitions.hpp"

#include <algorithm>
#include <stdexcept>

#include "parallel.hpp"

namespace granit {

FourierCoefficients fourier_coefficients(const GradientWaveform& waveform,
                                         int n_harmonics, int n_samples) {
    if (n_harmonics < 1) {
        throw std::invalid_argument("fourier_coefficients: n_harmonics >= 1");
    }
    // One period of beta(t) is half a driving period; integrate in the
    // angle u = 2(th - phi) which runs over [0, 2 pi).
    FourierCoefficients out;
    out.beta0 = 0.0;
    std::vector<double> cos_acc(static_cast<std::size_t>(n_harmonics), 0.0);
    const double du = 2.0 * std::numbers::pi / n_samples;
    for (int i = 0; i < n_samples; ++i) {
        const double u = du * i;
        const double c = std::cos(0.5 * u);
        const double c2 = c * c;
        const double b = waveform.beta_hat * waveform.B1 * c2 /
                         std::sqrt(waveform.B1 * waveform.B1 * c2 +
                                   waveform.B0y * waveform.B0y);
        out.beta0 += b;
        for (int k = 1; k <= n_harmonics; ++k) {
            cos_acc[static_cast<std::size_t>(k - 1)] += b * std::cos(k * u);
        }
    }
    out.beta0 /= n_samples;
    out.beta1 = 2.0 * cos_acc[0] / n_samples;
    for (int k = 2; k <= n_harmonics; ++k) {
        out.higher.push_back(2.0 * cos_acc[static_cast<std::size_t>(k - 1)] /
                             n_samples);
    }
    return out;
}

std::vector<std::complex<double>> integrate_amplitudes(
    const BouncerSpectrum& spectrum, const GradientWaveform& waveform, int spin,
    double velocity, int initial_state, double length, double step) {
    if (spin != 1 && spin != -1) {
        throw std::invalid_argument("integrate_amplitudes: spin must be +-1");
    }
    if (velocity <= 0.0) {
        throw std::invalid_argument("integrate_amplitudes: velocity > 0");
    }
    const int N = spectrum.n_states();
    if (initial_state < 1 || initial_state > N) {
        throw std::out_of_range("integrate_amplitudes: initial state");
    }
    const double gamma = spectrum.constants().gamma();
    const auto& consts = spectrum.constants();

    std::vector<double> omega(static_cast<std::size_t>(N));  // E_n / hbar
    std::vector<double> zmat(static_cast<std::size_t>(N * N));
    double rate = 0.0;
    const double beta_top = waveform.beta_hat * waveform.B1 /
                            std::hypot(waveform.B1, waveform.B0y);
    for (int n = 1; n <= N; ++n) {
        omega[static_cast<std::size_t>(n - 1)] = spectrum.energy(n) / consts.hbar;
        rate = std::max(rate, omega[static_cast<std::size_t>(n - 1)]);
        for (int m = 1; m <= N; ++m) {
            const double z = spectrum.z_matrix_element(n, m);
            zmat[static_cast<std::size_t>((n - 1) * N + (m - 1))] = z;
            rate = std::max(rate, 0.5 * gamma * beta_top * z);
        }
    }
    const double duration = length / velocity;
    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(duration / step));
    const double h = duration / static_cast<double>(n_steps);
    if (rate * h >= 0.05) {
        throw std::invalid_argument(
            "integrate_amplitudes: step too large for the fastest phase rate");
    }

    using C = std::complex<double>;
    std::vector<C> a(static_cast<std::size_t>(N), C{0.0, 0.0});
    a[static_cast<std::size_t>(initial_state - 1)] = C{1.0, 0.0};
    std::vector<C> k1(a.size()), k2(a.size()), k3(a.size()), k4(a.size()),
        tmp(a.size());

    const double pref = 0.5 * gamma * static_cast<double>(spin);
    const auto deriv = [&](double t, const std::vector<C>& y,
                           std::vector<C>& dy) {
        const double b = pref * waveform.value(t);
        for (int n = 0; n < N; ++n) {
            C s = omega[static_cast<std::size_t>(n)] * y[static_cast<std::size_t>(n)];
            const double* zrow = &zmat[static_cast<std::size_t>(n * N)];
            for (int m = 0; m < N; ++m) {
                s += b * zrow[m] * y[static_cast<std::size_t>(m)];
            }
            dy[static_cast<std::size_t>(n)] = C{s.imag(), -s.real()};  // -i s
        }
    };

    double t = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        deriv(t, a, k1);
        for (std::size_t n = 0; n < a.size(); ++n) tmp[n] = a[n] + 0.5 * h * k1[n];
        deriv(t + 0.5 * h, tmp, k2);
        for (std::size_t n = 0; n < a.size(); ++n) tmp[n] = a[n] + 0.5 * h * k2[n];
        deriv(t + 0.5 * h, tmp, k3);
        for (std::size_t n = 0; n < a.size(); ++n) tmp[n] = a[n] + h * k3[n];
        deriv(t + h, tmp, k4);
        for (std::size_t n = 0; n < a.size(); ++n) {
            a[n] += h / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
        }
        t = h * static_cast<double>(i + 1);
    }
    return a;
}

ResonanceCurve resonance_curve(const BouncerSpectrum& spectrum,
                               const ResonanceParams& params) {
    if (params.driving_frequencies.empty()) {
        throw std::invalid_argument("resonance_curve: empty frequency grid");
    }
    if (params.phase_samples < 1) {
        throw std::invalid_argument("resonance_curve: phase_samples >= 1");
    }
    const auto vnodes = velocity_nodes(params.velocity);
    const std::size_t nf = params.driving_frequencies.size();

    ResonanceCurve curve;
    curve.driving_frequencies = params.driving_frequencies;
    curve.probability.resize(nf);
    curve.probability_spin_up.resize(nf);
    curve.probability_spin_down.resize(nf);

    // One cell per (f, spin); the phase and velocity averages run inside
    // the cell, so the reduction order is fixed.
    parallel_for(2 * nf, params.workers, [&](std::size_t cell) {
        const std::size_t fi = cell / 2;
        const int spin = (cell % 2 == 0) ? 1 : -1;
        GradientWaveform w;
        w.beta_hat = params.excitation.beta_hat;
        w.B1 = params.excitation.B1;
        w.B0y = params.excitation.B0y;
        w.driving_frequency = params.driving_frequencies[fi];
        double acc = 0.0;
        for (const auto& vn : vnodes) {
            double phase_acc = 0.0;
            for (int k = 0; k < params.phase_samples; ++k) {
                w.phase = 2.0 * std::numbers::pi * k / params.phase_samples;
                const auto a = integrate_amplitudes(
                    spectrum, w, spin, vn.v, params.initial_state,
                    params.length, params.step);
                phase_acc += std::norm(a[0]);
            }
            acc += vn.weight * phase_acc / params.phase_samples;
        }
        if (spin > 0) {
            curve.probability_spin_up[fi] = acc;
        } else {
            curve.probability_spin_down[fi] = acc;
        }
    });
    for (std::size_t i = 0; i < nf; ++i) {
        curve.probability[i] =
            0.5 * (curve.probability_spin_up[i] + curve.probability_spin_down[i]);
    }
    return curve;
}

namespace {

bool refine_peak(const std::vector<double>& f, const std::vector<double>& p,
                 double noise_floor, double& out) {
    const auto it = std::max_element(p.begin(), p.end());
    if (it == p.end() || *it <= noise_floor) return false;
    const std::size_t i = static_cast<std::size_t>(it - p.begin());
    if (i == 0 || i + 1 == p.size()) {
        out = f[i];
        return true;
    }
    const double y1 = p[i - 1], y2 = p[i], y3 = p[i + 1];
    const double denom = y1 - 2.0 * y2 + y3;
    const double shift = denom != 0.0 ? 0.5 * (y1 - y3) / denom : 0.0;
    out = f[i] + shift * (f[i + 1] - f[i]);
    return true;
}

}  // namespace

ResonancePeaks find_peaks(const ResonanceCurve& curve, double noise_floor) {
    ResonancePeaks peaks;
    peaks.found_plus = refine_peak(curve.driving_frequencies,
                                   curve.probability_spin_up, noise_floor,
                                   peaks.f_plus);
    peaks.found_minus = refine_peak(curve.driving_frequencies,
                                    curve.probability_spin_down, noise_floor,
                                    peaks.f_minus);
    return peaks;
}

std::pair<double, double> stern_gerlach_prediction(
    const BouncerSpectrum& spectrum, double beta0, int n, int m) {
    const auto& c = spectrum.constants();
    const double x = c.mu_neutron * beta0 / (c.neutron_mass * c.g_local);
    if (x >= 1.0) {
        throw std::domain_error(
            "stern_gerlach_prediction: mu beta0 >= m g (gravity reversal)");
    }
    const double f_nm = spectrum.transition_frequency(n, m);
    return {f_nm * std::pow(1.0 + x, 2.0 / 3.0),
            f_nm * std::pow(1.0 - x, 2.0 / 3.0)};
}

double extract_unperturbed_frequency(double f_plus, double f_minus) {
    if (f_plus <= 0.0 || f_minus <= 0.0) {
        throw std::invalid_argument(
            "extract_unperturbed_frequency: frequencies must be positive");
    }
    const double sp = std::pow(2.0 * f_plus, 1.5);
    const double sm = std::pow(2.0 * f_minus, 1.5);
    return std::pow(0.5 * (sp + sm), 2.0 / 3.0);
}

}  // namespace granit
