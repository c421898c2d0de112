#pragma once

// Independent numerical references used by several test binaries.

#include <cmath>
#include <numbers>

namespace oracle {

inline double normal_pdf(double x, double var) {
    return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

// Composite Simpson rule on [a, b] with `panels` (even) subintervals.
template <class F>
double simpson(F f, double a, double b, int panels = 64) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Entropy in bits of floor(n X) for X ~ N(0, var), bin masses by Simpson.
inline double discretized_gaussian_entropy(double var, int n) {
    const double sd = std::sqrt(var);
    const int kmax = static_cast<int>(std::ceil(12.0 * sd * n)) + 1;
    double h = 0.0;
    for (int k = -kmax; k < kmax; ++k) {
        const double p = simpson([var](double x) { return normal_pdf(x, var); }, static_cast<double>(k) / n,
                                 static_cast<double>(k + 1) / n);
        if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
}

}  // namespace oracle
