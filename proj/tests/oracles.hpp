// Test-only oracles, independent of the library's evaluation paths.
#pragma once

#include <cmath>
#include <stdexcept>

namespace oracles {

// Root of a*y^3 + y = t by bisection, independent of the library's closed
// form; accurate to ~1e-14 relative.
inline double cubic_root_bisect(double a, double t) {
    if (t == 0.0) return 0.0;
    auto f = [&](double y) { return a * y * y * y + y - t; };
    double lo = 0.0, hi = 1.0;
    if (t > 0.0) {
        while (f(hi) < 0.0) hi *= 2.0;
    } else {
        lo = -1.0;
        while (f(lo) > 0.0) lo *= 2.0;
        hi = 0.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Standard normal CDF via the double-factorial series
//   Phi(x) = 1/2 + phi(x) * sum_{k>=0} x^(2k+1) / (2k+1)!!
// evaluated in long double; good to ~1e-17 for |x| <= 8.
inline double normal_cdf_series(double x) {
    if (std::fabs(x) > 8.0) return x > 0.0 ? 1.0 : 0.0;
    const long double xl = x;
    long double term = xl;
    long double sum = xl;
    for (int k = 1; k < 200; ++k) {
        term *= xl * xl / (2 * k + 1);
        sum += term;
        if (std::fabs(static_cast<double>(term)) < 1e-22) break;
    }
    const long double phi = std::exp(-0.5L * xl * xl) / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
    return static_cast<double>(0.5L + phi * sum);
}

}  // namespace oracles
