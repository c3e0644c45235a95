#include "spin.hpp"

#include <numbers>

#include "parallel.hpp"

namespace granit {

std::vector<AdiabaticityPoint> adiabaticity_scan(
    const PhysicalConstants& constants, const AdiabaticityScanParams& params) {
    if (params.B0y_values.empty() || params.frequencies.empty()) {
        throw std::invalid_argument("adiabaticity_scan: empty grid");
    }
    if (params.phase_samples < 4) {
        throw std::invalid_argument("adiabaticity_scan: phase_samples >= 4");
    }
    for (double f : params.frequencies) {
        if (f < 0.0 || f > 1000.0) {
            throw std::invalid_argument(
                "adiabaticity_scan: frequencies must lie in [0, 1000] Hz");
        }
    }
    const auto vnodes = velocity_nodes(params.velocity);
    const double gamma = constants.gamma();

    const std::size_t nb = params.B0y_values.size();
    const std::size_t nf = params.frequencies.size();
    std::vector<AdiabaticityPoint> out(nb * nf);

    parallel_for(nb * nf, params.workers, [&](std::size_t cell) {
        const double B0y = params.B0y_values[cell / nf];
        const double f = params.frequencies[cell % nf];
        // Keep the per-step rotation below ~0.06 rad for strong fields.
        const double b_top = std::hypot(params.B1, B0y);
        const double step = std::min(params.step, 0.06 / (gamma * b_top));
        double acc = 0.0;
        for (const auto& vn : vnodes) {
            double phase_acc = 0.0;
            for (int k = 0; k < params.phase_samples; ++k) {
                RestFrameFieldModel model;
                model.B1 = params.B1;
                model.B0y = B0y;
                model.spatial_period = params.spatial_period;
                model.driving_frequency = f;
                model.phase = 2.0 * std::numbers::pi * k / params.phase_samples;
                model.velocity = vn.v;
                const auto traj = integrate_bloch(
                    model, gamma, params.length / vn.v, step, false);
                phase_acc += traj.p_max;
            }
            acc += vn.weight * phase_acc / params.phase_samples;
        }
        out[cell] = {B0y, f, acc};
    });
    return out;
}

}  // namespace granit
