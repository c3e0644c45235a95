#pragma once

#include <array>
#include <utility>
#include <vector>

namespace granit {

// Square-section wire array generating the excitation gradient above the
// mirror.  All lengths in meters, currents in A, fields in T.  The wires
// run along y and are treated as infinitely long; the mirror surface is
// z = 0 and the wire bottom faces sit at z = standoff.
struct WireArrayConfig {
    double wire_side = 1.0e-3;
    double gap = 0.25e-3;
    int n_wires = 128;
    double standoff = 0.8e-3;
    std::array<double, 4> currents{1.4, 3.5, 3.5, 1.4};    // I1..I4
    std::array<double, 3> external_field{0.0, 0.0, 0.0};   // (B0x, B0y, B0z)
    double center_fraction = 0.8;  // x-window used for averaged figures
    double mu0 = 1.25663706212e-6;

    double pitch() const { return wire_side + gap; }
    double wire_center_z() const { return standoff + 0.5 * wire_side; }
    double span() const { return n_wires * pitch(); }
    // Center of wire i (0-based), array centered on x = 0.
    double wire_center_x(int i) const {
        return (i - 0.5 * (n_wires - 1)) * pitch();
    }
    // 8-periodic pattern I1, I2, I3, I4, -I1, -I2, -I3, -I4.
    double wire_current(int i) const {
        const double I = currents[static_cast<std::size_t>(i % 8) % 4];
        return (i % 8) < 4 ? I : -I;
    }

    void validate() const;
};

struct FieldSample {
    double x = 0.0;          // m
    double Bx = 0.0;         // T (external field included)
    double Bz = 0.0;         // T
    double dBx_dz = 0.0;     // T/m (array contribution only)
    double dBz_dz = 0.0;     // T/m
    double grad_absB = 0.0;  // T/m, (Bx dBx + Bz dBz)/|B|
    bool grad_defined = true;  // false where |B| = 0
};

// Closed-form field of an infinitely long square wire centered at the
// origin, current I along +y, side c.  Valid strictly outside the wire
// cross-section; throws std::domain_error inside or on the boundary.
std::pair<double, double> square_wire_field(double x, double z, double current,
                                            double side, double mu0);

// Closed-form z-derivatives of the above.
std::pair<double, double> square_wire_gradient(double x, double z,
                                               double current, double side,
                                               double mu0);

// Superposition over all wires plus the external field, gradient of |B|
// included.  The evaluation point must lie outside every conductor.
FieldSample array_field(const WireArrayConfig& config, double x, double z);

// Uniform scan of array_field at height z over [x_min, x_max].
std::vector<FieldSample> field_map(const WireArrayConfig& config, double z,
                                   double x_min, double x_max, int n_points);

struct ExcitationParams {
    double beta_hat;  // T/m, mean gradient over the central window at z = 0
    double B1;        // T, mean |B| over the central window at z = 0
};

// Effective AC-mode excitation parameters of a homogeneous-gradient
// configuration, evaluated with the external field switched off.
ExcitationParams extract_excitation_params(const WireArrayConfig& config);

}  // namespace granit
