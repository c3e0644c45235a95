#include "bouncer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "airy.hpp"
#include "quadrature.hpp"

namespace granit {

BouncerSpectrum::BouncerSpectrum(const PhysicalConstants& constants,
                                 int n_states)
    : constants_(constants) {
    constants_.validate();
    if (n_states < 1) {
        throw std::out_of_range("BouncerSpectrum: n_states must be >= 1");
    }
    epsilon_ = airy::negative_zeros(n_states);
    ai_prime_at_zero_.reserve(epsilon_.size());
    for (double e : epsilon_) {
        ai_prime_at_zero_.push_back(std::abs(airy::ai_prime(-e)));
    }
    const double m = constants_.neutron_mass;
    const double g = constants_.g_local;
    const double hbar = constants_.hbar;
    z0_ = std::cbrt(hbar * hbar / (2.0 * m * m * g));
    f0_ = m * g * z0_ / (2.0 * std::numbers::pi * hbar);
}

void BouncerSpectrum::check_index(int n) const {
    if (n < 1 || n > n_states()) {
        throw std::out_of_range("BouncerSpectrum: state index out of range");
    }
}

double BouncerSpectrum::energy(int n) const {
    check_index(n);
    return epsilon_[static_cast<std::size_t>(n - 1)] * constants_.neutron_mass *
           constants_.g_local * z0_;
}

double BouncerSpectrum::transition_frequency(int n, int m) const {
    check_index(n);
    check_index(m);
    if (n == m) {
        throw std::invalid_argument("transition_frequency: n == m");
    }
    return f0_ * (epsilon_[static_cast<std::size_t>(n - 1)] -
                  epsilon_[static_cast<std::size_t>(m - 1)]);
}

double BouncerSpectrum::z_matrix_element(int n, int m) const {
    check_index(n);
    check_index(m);
    if (n == m) {
        return 2.0 / 3.0 * z0_ * epsilon_[static_cast<std::size_t>(n - 1)];
    }
    const double de = epsilon_[static_cast<std::size_t>(n - 1)] -
                      epsilon_[static_cast<std::size_t>(m - 1)];
    // With every eigenfunction normalized positive (|Ai'| convention) the
    // element alternates sign with |n - m|; the relative signs are gauge
    // invariant and matter in the multi-state dynamics.
    const double sign = (std::abs(n - m) % 2 == 1) ? 1.0 : -1.0;
    return sign * 2.0 * z0_ / (de * de);
}

double BouncerSpectrum::required_gradient(int n, int m,
                                          double excitation_time) const {
    check_index(n);
    check_index(m);
    if (n == m) {
        throw std::invalid_argument("required_gradient: n == m");
    }
    if (excitation_time <= 0.0) {
        throw std::invalid_argument("required_gradient: nonpositive time");
    }
    const double ratio = transition_frequency(n, m) / f0_;
    return 0.5 * std::numbers::pi * constants_.hbar /
           (constants_.mu_neutron * z0_) * ratio * ratio / excitation_time;
}

double BouncerSpectrum::rabi_frequency(int n, int m, double beta) const {
    if (beta < 0.0) {
        throw std::invalid_argument("rabi_frequency: beta must be >= 0");
    }
    return constants_.mu_neutron / constants_.hbar *
           std::abs(z_matrix_element(n, m)) * beta;
}

double BouncerSpectrum::wavefunction(int n, double z) const {
    check_index(n);
    if (z < 0.0) return 0.0;
    const std::size_t i = static_cast<std::size_t>(n - 1);
    return airy::ai(z / z0_ - epsilon_[i]) /
           (std::sqrt(z0_) * ai_prime_at_zero_[i]);
}

namespace {

// Overlap <psi_n | psi~_m(. - h)> in units of z0, both wavefunctions in
// closed Airy form.  Integrand supported on [h, inf), truncated where
// both tails are dead.
double step_overlap(double eps_n, double aip_n, double eps_m, double aip_m,
                    double h_units) {
    const double upper = std::max(eps_n, eps_m + h_units) + 14.0;
    const auto f = [&](double u) {
        return airy::ai(u - eps_n) * airy::ai(u - h_units - eps_m);
    };
    const std::size_t n_iv =
        static_cast<std::size_t>(std::ceil((upper - h_units) / 0.002));
    return simpson(f, h_units, upper, n_iv) / (aip_n * aip_m);
}

}  // namespace

std::vector<double> step_populations(const BouncerSpectrum& spectrum,
                                     double step_height, int incoming_state) {
    if (step_height <= 0.0) {
        throw std::invalid_argument("step_populations: step height must be > 0");
    }
    if (incoming_state < 1) {
        throw std::out_of_range("step_populations: incoming state index");
    }
    const double h = step_height / spectrum.z0();
    const auto eps_in = airy::negative_zeros(incoming_state);
    const double e_m = eps_in.back();
    const double aip_m = std::abs(airy::ai_prime(-e_m));

    std::vector<double> p(static_cast<std::size_t>(spectrum.n_states()));
    for (int n = 1; n <= spectrum.n_states(); ++n) {
        const std::size_t i = static_cast<std::size_t>(n - 1);
        const double e_n = spectrum.epsilon()[i];
        const double aip_n = std::abs(airy::ai_prime(-e_n));
        const double c = step_overlap(e_n, aip_n, e_m, aip_m, h);
        p[i] = c * c;
    }
    return p;
}

std::vector<double> step_populations_slit_ensemble(
    const BouncerSpectrum& spectrum, double step_height, double slit_height,
    int max_incoming) {
    if (slit_height <= 0.0) {
        throw std::invalid_argument("step_populations: slit height must be > 0");
    }
    const auto eps_in = airy::negative_zeros(max_incoming);
    // Pre-step states that fit below the slit: turning point eps z0 < slit.
    int n_in = 0;
    for (double e : eps_in) {
        if (e * spectrum.z0() < slit_height) ++n_in;
    }
    if (n_in == 0) n_in = 1;

    std::vector<double> p(static_cast<std::size_t>(spectrum.n_states()), 0.0);
    for (int m = 1; m <= n_in; ++m) {
        const auto pm = step_populations(spectrum, step_height, m);
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] += pm[i] / static_cast<double>(n_in);
        }
    }
    return p;
}

}  // namespace granit
