#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "constants.hpp"
#include "velocity.hpp"

namespace granit {

using Vec3 = std::array<double, 3>;

// Rest-frame field seen by a neutron crossing the oscillating wire-array
// pattern on a straight horizontal trajectory at the mirror surface:
//   Bx =  B1 cos(2 pi f t + phi) sin(2 pi v t / d)
//   By =  B0y
//   Bz = -B1 cos(2 pi f t + phi) cos(2 pi v t / d)
struct RestFrameFieldModel {
    double B1 = 0.8e-3;       // T
    double B0y = 0.3e-3;      // T
    double spatial_period = 0.01;  // m
    double driving_frequency = 0.0;  // Hz
    double phase = 0.0;       // rad
    double velocity = 4.0;    // m/s

    Vec3 operator()(double t) const {
        const double c =
            B1 * std::cos(2.0 * std::numbers::pi * driving_frequency * t + phase);
        const double th = 2.0 * std::numbers::pi * velocity * t / spatial_period;
        return {c * std::sin(th), B0y, -c * std::cos(th)};
    }
};

struct SpinTrajectory {
    std::vector<double> times;
    std::vector<Vec3> polarization;
    std::vector<double> flip_probability;  // p(t) = (1 - Pi.B/|B|)/2
    double p_max = 0.0;
};

namespace detail {

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

}  // namespace detail

// Fixed-step RK4 on the Bloch equation dPi/dt = gamma Pi x B(t) for an
// arbitrary field functor.  Pi(0) is aligned with B(0) ("spin up").
// The step must keep the per-step precession angle below 0.1 rad; the
// field magnitude is probed over the first trajectory to enforce it.
template <typename Field>
SpinTrajectory integrate_bloch(Field&& field, double gamma, double duration,
                               double step, bool store_trajectory = true) {
    if (duration <= 0.0 || step <= 0.0) {
        throw std::invalid_argument("integrate_bloch: duration and step > 0");
    }
    const Vec3 b0 = field(0.0);
    const double b0n = detail::norm(b0);
    if (b0n == 0.0) {
        throw std::domain_error("integrate_bloch: zero field at t = 0");
    }
    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(duration / step));
    const double h = duration / static_cast<double>(n_steps);

    // Probe |B| on the step grid to enforce the rotation-per-step bound.
    double b_max = b0n;
    for (std::size_t i = 1; i <= n_steps; i += (n_steps / 256) + 1) {
        b_max = std::max(b_max, detail::norm(field(h * static_cast<double>(i))));
    }
    if (gamma * b_max * h >= 0.1) {
        throw std::invalid_argument(
            "integrate_bloch: step too large for the local Larmor rate");
    }

    SpinTrajectory traj;
    Vec3 P{b0[0] / b0n, b0[1] / b0n, b0[2] / b0n};
    if (store_trajectory) {
        traj.times.reserve(n_steps + 1);
        traj.polarization.reserve(n_steps + 1);
        traj.flip_probability.reserve(n_steps + 1);
        traj.times.push_back(0.0);
        traj.polarization.push_back(P);
        traj.flip_probability.push_back(0.0);
    }
    const auto rhs = [&](double t, const Vec3& p) {
        const Vec3 b = field(t);
        const Vec3 c = detail::cross(p, b);
        return Vec3{gamma * c[0], gamma * c[1], gamma * c[2]};
    };
    double t = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) {
        const Vec3 k1 = rhs(t, P);
        const Vec3 p2{P[0] + 0.5 * h * k1[0], P[1] + 0.5 * h * k1[1],
                      P[2] + 0.5 * h * k1[2]};
        const Vec3 k2 = rhs(t + 0.5 * h, p2);
        const Vec3 p3{P[0] + 0.5 * h * k2[0], P[1] + 0.5 * h * k2[1],
                      P[2] + 0.5 * h * k2[2]};
        const Vec3 k3 = rhs(t + 0.5 * h, p3);
        const Vec3 p4{P[0] + h * k3[0], P[1] + h * k3[1], P[2] + h * k3[2]};
        const Vec3 k4 = rhs(t + h, p4);
        for (int j = 0; j < 3; ++j) {
            P[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        t = h * static_cast<double>(i + 1);
        const Vec3 b = field(t);
        const double bn = detail::norm(b);
        const double p = bn > 0.0
                             ? 0.5 * (1.0 - (P[0] * b[0] + P[1] * b[1] +
                                             P[2] * b[2]) / bn)
                             : 0.5;
        traj.p_max = std::max(traj.p_max, p);
        if (store_trajectory) {
            traj.times.push_back(t);
            traj.polarization.push_back(P);
            traj.flip_probability.push_back(p);
        }
    }
    return traj;
}

inline SpinTrajectory integrate_bloch(const RestFrameFieldModel& model,
                                      const PhysicalConstants& constants,
                                      double duration, double step,
                                      bool store_trajectory = true) {
    return integrate_bloch(model, constants.gamma(), duration, step,
                           store_trajectory);
}

struct AdiabaticityPoint {
    double B0y;      // T
    double f;        // Hz
    double p_max_avg;
};

struct AdiabaticityScanParams {
    std::vector<double> B0y_values;  // T
    std::vector<double> frequencies;  // Hz
    VelocitySpectrum velocity;
    int phase_samples = 16;
    double B1 = 0.8e-3;       // T
    double spatial_period = 0.01;  // m
    double length = 0.16;     // m
    double step = 4.0e-7;     // s; shrunk automatically for strong fields
    int workers = 0;
};

// p_max averaged over phase (equispaced, trapezoid = spectrally accurate
// for the 2 pi periodic integrand) and the velocity spectrum, for every
// (B0y, f) grid cell.  Row-major over B0y then f, independent of the
// worker schedule.
std::vector<AdiabaticityPoint> adiabaticity_scan(
    const PhysicalConstants& constants, const AdiabaticityScanParams& params);

}  // namespace granit
