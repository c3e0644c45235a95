#include "airy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace granit::airy {

namespace {

constexpr double kAi0 = 0.35502805388781723926;    // Ai(0) = 3^(-2/3)/Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841;  // Ai'(0) = -3^(-1/3)/Gamma(1/3)

struct AiPair {
    double ai;
    double aip;
};

// Maclaurin series: Ai = Ai(0) f(x) + Ai'(0) g(x), term recurrences for
// f, g and their derivatives.  Converges fast for |x| <= 8; on the
// negative axis cancellation costs ~6 digits of the 16 available.
AiPair maclaurin(double x) {
    const double x3 = x * x * x;
    double tf = 1.0;            // term of f, k = 0
    double tg = x;              // term of g
    double tgp = 1.0;           // term of g'
    double tfp = 0.5 * x * x;   // term of f', k = 1
    double f = tf, g = tg, fp = tfp, gp = tgp;
    for (int k = 0; k < 120; ++k) {
        const double k3 = 3.0 * k;
        tf *= x3 / ((k3 + 2.0) * (k3 + 3.0));
        tg *= x3 / ((k3 + 3.0) * (k3 + 4.0));
        tgp *= x3 / ((k3 + 1.0) * (k3 + 3.0));
        // f' terms are indexed from k = 1
        tfp *= x3 / ((k3 + 3.0) * (k3 + 5.0));
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
    }
    return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// Poincare coefficients u_k (DLMF 9.7.2) and v_k = (6k+1)/(1-6k) u_k.
constexpr int kMaxU = 20;

struct UVTables {
    double u[kMaxU + 1];
    double v[kMaxU + 1];
    UVTables() {
        u[0] = 1.0;
        v[0] = 1.0;
        for (int k = 1; k <= kMaxU; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) *
                   (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
            v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        }
    }
};

const UVTables kUV;

// Sum an alternating asymptotic tail sum (-1)^k c_k / zeta^k starting at
// k0 with stride 2, truncating at the smallest term.
double asym_sum(const double* c, double zeta, int k0) {
    double s = 0.0;
    double prev = 1e300;
    double sign = 1.0;
    for (int k = k0; k <= kMaxU; k += 2) {
        const double term = c[k] / std::pow(zeta, k);
        if (std::abs(term) > prev) break;
        s += sign * term;
        prev = std::abs(term);
        sign = -sign;
    }
    return s;
}

// x >= 8: DLMF 9.7.5 / 9.7.6.
AiPair asymptotic_positive(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double x14 = std::pow(x, 0.25);
    const double pre = std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi));
    double su = 0.0, sv = 0.0;
    double sign = 1.0;
    double prev = 1e300;
    for (int k = 0; k <= kMaxU; ++k) {
        const double tu = kUV.u[k] / std::pow(zeta, k);
        if (tu > prev) break;
        su += sign * tu;
        sv += sign * kUV.v[k] / std::pow(zeta, k);
        prev = tu;
        sign = -sign;
    }
    return {pre / x14 * su, -pre * x14 * sv};
}

// x <= -8: DLMF 9.7.9 / 9.7.10 with argument z = -x.
AiPair asymptotic_negative(double x) {
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    const double z14 = std::pow(z, 0.25);
    const double sp = std::numbers::inv_sqrtpi;
    const double c = std::cos(zeta - std::numbers::pi / 4.0);
    const double s = std::sin(zeta - std::numbers::pi / 4.0);
    const double ue = asym_sum(kUV.u, zeta, 0);  // even u
    const double uo = asym_sum(kUV.u, zeta, 1);  // odd u
    const double ve = asym_sum(kUV.v, zeta, 0);
    const double vo = asym_sum(kUV.v, zeta, 1);
    const double ai = sp / z14 * (c * ue + s * uo);
    const double aip = sp * z14 * (s * ve - c * vo);
    return {ai, aip};
}

AiPair eval(double x) {
    // On the positive side the Maclaurin series cancels catastrophically
    // (both parts grow like e^{2 zeta} while Ai decays), so hand over to
    // the asymptotic form much earlier than on the oscillatory side.
    if (x > 5.5) return asymptotic_positive(x);
    if (x < -8.0) return asymptotic_negative(x);
    return maclaurin(x);
}

}  // namespace

double ai(double x) { return eval(x).ai; }

double ai_prime(double x) { return eval(x).aip; }

std::vector<double> negative_zeros(int n) {
    if (n < 1 || n > 100) {
        throw std::out_of_range("negative_zeros: n must be in [1, 100]");
    }
    std::vector<double> eps(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        // Asymptotic seed (DLMF 9.9.18): a_n ~ -T(3 pi (4n-1)/8)
        const double t = 3.0 * std::numbers::pi * (4.0 * i - 1.0) / 8.0;
        const double t2 = 1.0 / (t * t);
        double e = std::pow(t, 2.0 / 3.0) *
                   (1.0 + t2 * (5.0 / 48.0 - t2 * 5.0 / 36.0));
        for (int it = 0; it < 30; ++it) {
            const double step = ai(-e) / ai_prime(-e);
            e += step;  // d/de Ai(-e) = -Ai'(-e)
            if (std::abs(step) < 1e-13 * e) break;
        }
        eps[static_cast<std::size_t>(i - 1)] = e;
    }
    return eps;
}

}  // namespace granit::airy
