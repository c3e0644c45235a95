#pragma once

#include <vector>

#include "constants.hpp"

namespace granit {

// Eigensystem of the quantum bouncer: neutron bound by gravity above a
// perfect mirror at z = 0.  Energies E_n = eps_n m g z0 with eps_n the
// negative Airy zeros; z0 and f0 are always recomputed from the
// constants, never stored independently.
class BouncerSpectrum {
  public:
    explicit BouncerSpectrum(const PhysicalConstants& constants,
                             int n_states = 4);

    const PhysicalConstants& constants() const { return constants_; }
    int n_states() const { return static_cast<int>(epsilon_.size()); }
    const std::vector<double>& epsilon() const { return epsilon_; }
    double z0() const { return z0_; }  // m
    double f0() const { return f0_; }  // Hz

    double energy(int n) const;  // J, n in [1, n_states]

    /// f_nm = f0 (eps_n - eps_m); negative for n < m.
    double transition_frequency(int n, int m) const;

    /// <n|z|m>: magnitude 2 z0 / (eps_n - eps_m)^2 off-diagonal with sign
    /// (-1)^(|n-m|+1) in the positive-wavefunction gauge; (2/3) z0 eps_n
    /// on the diagonal.  Meters.
    double z_matrix_element(int n, int m) const;

    /// Gradient amplitude satisfying the pi-pulse condition
    /// Omega t0 = pi for the n->m transition.  T/m.
    double required_gradient(int n, int m, double excitation_time) const;

    /// Rabi angular frequency Omega = (mu/hbar) |<n|z|m>| beta.  rad/s.
    double rabi_frequency(int n, int m, double beta) const;

    /// Normalized eigenfunction psi_n(z), closed Airy form.  1/sqrt(m).
    double wavefunction(int n, double z) const;

  private:
    void check_index(int n) const;

    PhysicalConstants constants_;
    std::vector<double> epsilon_;
    std::vector<double> ai_prime_at_zero_;  // |Ai'(-eps_n)|
    double z0_;
    double f0_;
};

// Populations p_n (n = 1..spectrum.n_states()) after dropping a step of
// height h: overlap of the single pre-step eigenstate `incoming_state`
// (built on the raised mirror) with the post-step basis.
std::vector<double> step_populations(const BouncerSpectrum& spectrum,
                                     double step_height, int incoming_state);

// Same, for an incoherent equal-weight mixture of the pre-step states
// whose classical turning point eps_m z0 fits below the entrance slit.
std::vector<double> step_populations_slit_ensemble(
    const BouncerSpectrum& spectrum, double step_height, double slit_height,
    int max_incoming = 10);

}  // namespace granit
