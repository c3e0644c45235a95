#include "magnetics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace granit {

void WireArrayConfig::validate() const {
    if (wire_side <= 0 || gap < 0 || standoff <= 0 || mu0 <= 0) {
        throw std::invalid_argument("wire array: geometry must be positive");
    }
    if (n_wires < 8 || n_wires % 8 != 0) {
        throw std::invalid_argument(
            "wire array: n_wires must be a positive multiple of 8");
    }
    if (center_fraction <= 0 || center_fraction > 1) {
        throw std::invalid_argument("wire array: center_fraction in (0, 1]");
    }
}

namespace {

struct WireTerms {
    double L1, L2, L3;
    double Amm, Apm, Amp, App;
    double xm, xp, zm, zp;
};

WireTerms wire_terms(double x, double z, double c) {
    WireTerms t;
    t.xm = x - 0.5 * c;
    t.xp = x + 0.5 * c;
    t.zm = z - 0.5 * c;
    t.zp = z + 0.5 * c;
    const double mm = t.xm * t.xm + t.zm * t.zm;
    const double pm = t.xp * t.xp + t.zm * t.zm;
    const double mp = t.xm * t.xm + t.zp * t.zp;
    const double pp = t.xp * t.xp + t.zp * t.zp;
    t.L1 = std::log(mm * pp / (pm * mp));
    t.L2 = std::log(mm * pm / (mp * pp));
    t.L3 = std::log(mm * mp / (pm * pp));
    // Principal-value arctan; the pi/2 limit on the face planes is the
    // correct one for exterior points.
    t.Amm = std::atan(t.xm / t.zm);
    t.Apm = std::atan(t.xp / t.zm);
    t.Amp = std::atan(t.xm / t.zp);
    t.App = std::atan(t.xp / t.zp);
    return t;
}

void check_outside(double x, double z, double c) {
    if (std::abs(x) <= 0.5 * c && std::abs(z) <= 0.5 * c) {
        throw std::domain_error(
            "square wire field: point inside or on the conductor");
    }
}

}  // namespace

namespace {

// Closed form valid in the half-slabs |z| > side/2 where the principal
// arctans have no branch cut.
std::pair<double, double> field_core(double x, double z, double pref,
                                     double side) {
    const auto t = wire_terms(x, z, side);
    const double Bx = -pref * (x * t.L1 - 0.5 * side * t.L2 +
                               2.0 * t.zm * (t.Amm - t.Apm) +
                               2.0 * t.zp * (t.App - t.Amp));
    const double Bz = pref * (z * t.L1 - 0.5 * side * t.L3 +
                              2.0 * t.xm * (t.Amp - t.Amm) +
                              2.0 * t.xp * (t.Apm - t.App));
    return {Bx, Bz};
}

std::pair<double, double> gradient_core(double x, double z, double pref,
                                        double side) {
    const auto t = wire_terms(x, z, side);
    const double dBx_dz = 2.0 * pref * (t.Amp - t.Amm + t.Apm - t.App);
    const double dBz_dz = pref * t.L1;
    return {dBx_dz, dBz_dz};
}

}  // namespace

std::pair<double, double> square_wire_field(double x, double z, double current,
                                            double side, double mu0) {
    check_outside(x, z, side);
    const double pref = mu0 * current / (4.0 * std::numbers::pi * side * side);
    if (std::abs(z) >= std::abs(x)) return field_core(x, z, pref, side);
    // Points beside the conductor sit on the arctan branch cut.  The
    // square section is invariant under a quarter turn about the wire
    // axis, so evaluate at the rotated point and rotate the field back.
    const auto [bx, bz] = field_core(z, -x, pref, side);
    return {-bz, bx};
}

std::pair<double, double> square_wire_gradient(double x, double z,
                                               double current, double side,
                                               double mu0) {
    check_outside(x, z, side);
    const double pref = mu0 * current / (4.0 * std::numbers::pi * side * side);
    if (std::abs(z) >= std::abs(x)) return gradient_core(x, z, pref, side);
    // Same quarter-turn trick; d/dz maps to d/dx~ in the rotated frame,
    // which the div- and curl-free conditions turn back into the
    // closed-form z~ derivatives: dBx/dz = -dBx~/dz~, dBz/dz = -dBz~/dz~.
    const auto [gx, gz] = gradient_core(z, -x, pref, side);
    return {-gx, -gz};
}

FieldSample array_field(const WireArrayConfig& config, double x, double z) {
    config.validate();
    FieldSample s;
    s.x = x;
    const double zc = config.wire_center_z();
    for (int i = 0; i < config.n_wires; ++i) {
        const double I = config.wire_current(i);
        const double xr = x - config.wire_center_x(i);
        const double zr = z - zc;
        const auto [bx, bz] =
            square_wire_field(xr, zr, I, config.wire_side, config.mu0);
        const auto [gx, gz] =
            square_wire_gradient(xr, zr, I, config.wire_side, config.mu0);
        s.Bx += bx;
        s.Bz += bz;
        s.dBx_dz += gx;
        s.dBz_dz += gz;
    }
    s.Bx += config.external_field[0];
    s.Bz += config.external_field[2];
    const double By = config.external_field[1];
    const double absB = std::sqrt(s.Bx * s.Bx + By * By + s.Bz * s.Bz);
    if (absB > 0.0) {
        s.grad_absB = (s.Bx * s.dBx_dz + s.Bz * s.dBz_dz) / absB;
        s.grad_defined = true;
    } else {
        s.grad_absB = std::numeric_limits<double>::quiet_NaN();
        s.grad_defined = false;
    }
    return s;
}

std::vector<FieldSample> field_map(const WireArrayConfig& config, double z,
                                   double x_min, double x_max, int n_points) {
    if (n_points < 2) {
        throw std::invalid_argument("field_map: n_points must be >= 2");
    }
    if (!(x_max > x_min)) {
        throw std::invalid_argument("field_map: empty x range");
    }
    std::vector<FieldSample> out;
    out.reserve(static_cast<std::size_t>(n_points));
    const double dx = (x_max - x_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        out.push_back(array_field(config, x_min + dx * i, z));
    }
    return out;
}

ExcitationParams extract_excitation_params(const WireArrayConfig& config) {
    config.validate();
    bool all_zero = true;
    for (double I : config.currents) {
        if (I != 0.0) all_zero = false;
    }
    if (all_zero) {
        throw std::invalid_argument(
            "extract_excitation_params: all currents are zero");
    }
    WireArrayConfig cfg = config;
    cfg.external_field = {0.0, 0.0, 0.0};
    const double half = 0.5 * cfg.center_fraction * cfg.span();
    // ~16 samples per wire pitch resolves the ripple comfortably.
    const int n = static_cast<int>(std::ceil(2.0 * half / cfg.pitch())) * 16 + 1;
    const auto samples = field_map(cfg, 0.0, -half, half, n);
    double grad_sum = 0.0;
    double absB_sum = 0.0;
    for (const auto& s : samples) {
        grad_sum += s.grad_absB;
        absB_sum += std::sqrt(s.Bx * s.Bx + s.Bz * s.Bz);
    }
    const double inv = 1.0 / static_cast<double>(samples.size());
    return {grad_sum * inv, absB_sum * inv};
}

}  // namespace granit
