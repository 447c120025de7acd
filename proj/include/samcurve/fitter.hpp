#pragma once

#include <cstddef>
#include <vector>

#include "samcurve/dataprep.hpp"
#include "samcurve/measures.hpp"
#include "samcurve/scurve.hpp"

namespace samcurve {

enum class InitMode {
    Constant,           ///< p_i and m_i start from fixed values
    SlopeAtInflection,  ///< p_i start at 0, m_i at the local data slope
};

/// Initial conditions, bound, and stopping rules for one fit.
struct FitConfig {
    std::size_t n = 1;          ///< number of superposed curves
    double init_a = 1.0;
    std::vector<double> init_m;  ///< empty = default (0.1 for n=1, 1 otherwise);
                                 ///< one value broadcasts, else size n
    std::vector<double> init_p;  ///< empty = default 1; one value broadcasts
    InitMode init_mode = InitMode::Constant;
    double a_lower_bound = kMinPerturbation;
    std::size_t max_iterations = 20000;
    double sse_rel_tol = 1e-10;   ///< stop when relative SSE improvement drops below
    double gradient_tol = 1e-12;  ///< stop when the gradient infinity-norm drops below

    void validate() const;
};

/// Outcome of one fit. `converged == false` means the iteration budget ran
/// out while the optimizer was still improving; it is not an error.
struct FitReport {
    Superposition params;
    double sse = 0.0;
    double initial_sse = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    MeasureSet measures;
};

/// Slope of the data across the pair of points bracketing x_c (its two
/// neighbors when x_c is itself a data point); the SlopeAtInflection seed.
double local_slope(const CurveTable& data, double x_c);

/// r_k = y_net(xs[k]) - ys[k], one residual per table row.
std::vector<double> residuals(const Superposition& sup, const CurveTable& data);
std::vector<double> residuals(const Superposition& sup, const EmpiricalCdf& data);

/// Sum of squared residuals of `sup` against the table.
double sum_squared_residuals(const Superposition& sup, const CurveTable& data);

/// Levenberg-Marquardt least squares over the free parameters (a and m for
/// n=1; a, all p_i and m_i for n>1), with the inflection coordinates held
/// fixed and a projected onto [a_lower_bound, inf) after every step. Every
/// accepted step strictly reduces the SSE.
FitReport fit(const CurveTable& data, const InflectionSet& inflections, const FitConfig& config);
FitReport fit(const EmpiricalCdf& data, const InflectionSet& inflections, const FitConfig& config);

/// One fit per n in [n_lo, n_hi], re-selecting inflection points for each n
/// with the slope-midpoint strategy. Per-fit failures are recorded in the
/// reports, never thrown.
std::vector<FitReport> sweep_n(const CurveTable& data, std::size_t n_lo, std::size_t n_hi,
                               const FitConfig& config);

/// Sweep over an ECDF with either selection strategy.
std::vector<FitReport> sweep_n(const EmpiricalCdf& data, InflectionStrategy strategy,
                               std::size_t n_lo, std::size_t n_hi, const FitConfig& config);

}  // namespace samcurve
