#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace granit {

// Composite Simpson on [a, b] with n intervals (n rounded up to even).
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
    if (n < 2) n = 2;
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) {
        s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

struct QuadNode {
    double x;
    double w;
};

// Gauss-Legendre nodes/weights on [-1, 1], Newton on P_n.
inline std::vector<QuadNode> gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    std::vector<QuadNode> out(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[static_cast<std::size_t>(i)] = {-x, w};
        out[static_cast<std::size_t>(n - 1 - i)] = {x, w};
    }
    return out;
}

// Gauss-Legendre rescaled to [a, b].
inline std::vector<QuadNode> gauss_legendre(int n, double a, double b) {
    auto nodes = gauss_legendre(n);
    for (auto& nd : nodes) {
        nd.x = 0.5 * (a + b) + 0.5 * (b - a) * nd.x;
        nd.w *= 0.5 * (b - a);
    }
    return nodes;
}

}  // namespace granit
