#include "samcurve/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace samcurve {

namespace {

constexpr int kGridPoints = 2048;
constexpr double kGoldenXTol = 1e-10;

}  // namespace

std::pair<double, double> max_slope(const Superposition& sup, double lo, double hi) {
    if (!(lo < hi)) {
        throw std::invalid_argument("degenerate search interval");
    }
    if (sup.size() == 1) {
        // Exact: the single bell-curve peaks at its inflection with height |p*m|.
        const Component& c = sup.components().front();
        return {std::fabs(c.weight * c.slope), c.x_c};
    }

    auto deriv = [&sup](double x) { return eval_superposition_derivative(sup, x); };

    double best = -std::numeric_limits<double>::infinity();
    int best_k = 0;
    const double step = (hi - lo) / (kGridPoints - 1);
    for (int k = 0; k < kGridPoints; ++k) {
        const double d = deriv(lo + step * k);
        if (d > best) {
            best = d;
            best_k = k;
        }
    }
    // Golden-section refinement on the bracketing neighbors of the grid winner.
    double a = lo + step * std::max(best_k - 1, 0);
    double b = lo + step * std::min(best_k + 1, kGridPoints - 1);
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = deriv(c);
    double fd = deriv(d);
    while (b - a > kGoldenXTol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = deriv(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = deriv(d);
        }
    }
    const double xm = (a + b) / 2.0;
    return {deriv(xm), xm};
}

double ratio_measure(double a, double m_max) {
    if (a < kMinPerturbation) {
        throw std::domain_error("perturbation parameter a below lower bound 1e-9");
    }
    return m_max / (1.0 + a);
}

double nonlinearity_percent(const Superposition& sup, double m_max) {
    if (m_max == 0.0) {
        throw std::domain_error("nonlinearity measure undefined for zero peak slope");
    }
    return 100.0 * std::fabs(sup.linear_slope_sum() - m_max) / m_max;
}

double normalized_peak(const Superposition& sup, const HistogramSpec& hist) {
    if (hist.edges.size() < 2) {
        throw std::invalid_argument("histogram needs at least two edges");
    }
    double edge_sum = 0.0;
    for (double e : hist.edges) {
        edge_sum += eval_superposition_derivative(sup, e);
    }
    if (edge_sum == 0.0) {
        throw std::domain_error("normalized peak undefined: derivative sums to zero over edges");
    }
    const auto [peak, x] = max_slope(sup, hist.edges.front(), hist.edges.back());
    (void)x;
    return peak / edge_sum;
}

MeasureSet compute_measures(const Superposition& sup, double lo, double hi) {
    MeasureSet measures;
    const auto [m_max, argmax_x] = max_slope(sup, lo, hi);
    measures.m_max = m_max;
    measures.argmax_x = argmax_x;
    measures.ratio = ratio_measure(sup.a(), m_max);
    measures.nl_percent = (m_max == 0.0) ? 0.0 : nonlinearity_percent(sup, m_max);
    return measures;
}

}  // namespace samcurve
