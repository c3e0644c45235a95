#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "quadrature.hpp"

namespace granit {

// Horizontal velocity spectrum of the beam: Gaussian, truncated to keep
// v strictly positive.  Averages over the spectrum use Gauss-Legendre
// nodes on the truncated interval, density-weighted and renormalized.
struct VelocitySpectrum {
    double mean = 4.0;   // m/s
    double sigma = 1.5;  // m/s
    double v_min = 0.5;  // m/s
    double v_max = 8.5;  // m/s
    int nodes = 9;

    void validate() const {
        if (sigma <= 0 || v_min <= 0 || !(v_max > v_min) || nodes < 1) {
            throw std::invalid_argument("velocity spectrum: invalid parameters");
        }
    }
};

struct VelocityNode {
    double v;
    double weight;
};

inline std::vector<VelocityNode> velocity_nodes(const VelocitySpectrum& spec) {
    spec.validate();
    const auto gl = gauss_legendre(spec.nodes, spec.v_min, spec.v_max);
    std::vector<VelocityNode> out;
    out.reserve(gl.size());
    double total = 0.0;
    for (const auto& n : gl) {
        const double u = (n.x - spec.mean) / spec.sigma;
        const double w = n.w * std::exp(-0.5 * u * u);
        out.push_back({n.x, w});
        total += w;
    }
    for (auto& n : out) n.weight /= total;
    return out;
}

}  // namespace granit
