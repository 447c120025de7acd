#pragma once

#include <optional>
#include <utility>

#include "samcurve/dataprep.hpp"
#include "samcurve/scurve.hpp"

namespace samcurve {

/// Fit characterization: the bell-curve height m, its location, the
/// enzyme-kinetics ratio m/(1+a), the percentage nonlinearity, and (when a
/// histogram is available) the normalized density peak.
struct MeasureSet {
    double m_max = 0.0;       ///< peak of the derivative (bell-curve height)
    double argmax_x = 0.0;    ///< where the peak is attained
    double ratio = 0.0;       ///< m_max / (1 + a)
    double nl_percent = 0.0;  ///< 100 * |sum p_i m_i - m_max| / m_max
    std::optional<double> m_bar;  ///< normalized density peak, if computed
};

/// Peak of the superposition derivative over [lo, hi]: a 2048-point grid scan
/// refined by golden-section search to 1e-10 in x. Single-component
/// superpositions short-circuit to the exact peak |p*m| at the inflection.
std::pair<double, double> max_slope(const Superposition& sup, double lo, double hi);

/// m_max / (1 + a); strictly decreasing in a for fixed positive m_max.
double ratio_measure(double a, double m_max);

/// 100 * |sum p_i m_i - m_max| / m_max: the gap between the slope sum with
/// the nonlinearity off and the realized peak. Throws std::domain_error when
/// m_max is zero.
double nonlinearity_percent(const Superposition& sup, double m_max);

/// Peak of the derivative divided by the sum of the derivative over the
/// histogram's bin edges; comparable to relative-frequency histogram bars.
double normalized_peak(const Superposition& sup, const HistogramSpec& hist);

/// m_max, argmax, ratio and NL%; the search interval should cover the data
/// range (callers pad it by 5% a side). m_bar is left unset.
MeasureSet compute_measures(const Superposition& sup, double lo, double hi);

}  // namespace samcurve
