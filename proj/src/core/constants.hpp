#pragma once

#include <stdexcept>

namespace granit {

// All quantities SI. CLI and reports convert to um / neV / Hz / T/m / mT
// at the boundary only.
struct PhysicalConstants {
    double neutron_mass = 1.67492749804e-27;  // kg
    double g_local = 9.81;                    // m/s^2
    double hbar = 1.054571817e-34;            // J s
    double mu_neutron = 60.3e-9 * 1.602176634e-19;  // J/T (60.3 neV/T)
    double mu0 = 1.25663706212e-6;            // T m/A

    // Gyromagnetic ratio, angular frequency per field (rad/s/T).
    double gamma() const { return 2.0 * mu_neutron / hbar; }

    void validate() const {
        if (neutron_mass <= 0 || g_local <= 0 || hbar <= 0 || mu_neutron <= 0 ||
            mu0 <= 0) {
            throw std::invalid_argument("physical constants must be positive");
        }
    }
};

}  // namespace granit
