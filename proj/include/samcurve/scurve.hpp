#pragma once

#include <cstddef>
#include <vector>

namespace samcurve {

/// Smallest admissible value of the perturbation parameter `a`.
inline constexpr double kMinPerturbation = 1e-9;

/// One S-curve: the real solution y(x) of a*(y-y_c)^3 + (y-y_c) = m*(x-x_c).
///
/// The curve is a singular perturbation of the line y - y_c = m*(x - x_c);
/// as a -> 0 it degenerates back to that line, and (x_c, y_c) is its single
/// inflection point, where the slope equals m.
struct SCurveParams {
    double a = 1.0;    ///< perturbation strength, must stay >= kMinPerturbation
    double m = 1.0;    ///< slope at the inflection point (may be negative)
    double x_c = 0.0;  ///< inflection abscissa
    double y_c = 0.0;  ///< inflection ordinate
};

/// One weighted member of a Superposition.
struct Component {
    double weight = 1.0;  ///< p_i
    double slope = 1.0;   ///< m_i
    double x_c = 0.0;     ///< inflection abscissa (fixed, data-chosen)
    double y_c = 0.0;     ///< inflection ordinate (fixed, data-chosen)
};

/// Weighted sum of S-curves sharing a single perturbation parameter:
///   y_net(x) = sum_i p_i * y(a, m_i, x_ci, y_ci)(x).
///
/// Immutable after construction; all evaluation entry points are pure, so a
/// Superposition may be shared freely across threads.
class Superposition {
  public:
    /// The unit curve y(1, 1, 0, 0) with weight 1.
    Superposition() : a_(1.0), components_(1) {}
    Superposition(double a, std::vector<Component> components);

    double a() const { return a_; }
    const std::vector<Component>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }

    /// Sum of p_i * m_i: the net slope with the nonlinearity switched off.
    double linear_slope_sum() const;

  private:
    double a_;
    std::vector<Component> components_;
};

/// Real root u of a*u^3 + u = t.
///
/// Uses the rationalized Cardano form (no subtraction of nearly equal cube
/// roots on either tail) plus one Newton polish, so the cubic residual stays
/// below 1e-9*(1+|t|) across a in [1e-9, 1e6] and |t| up to 1e9.
double perturbed_line_root(double a, double t);

/// y(x) for a single S-curve. Throws std::domain_error when a is below
/// kMinPerturbation and std::invalid_argument on non-finite input.
double eval_scurve(const SCurveParams& params, double x);

/// dy/dx = m / (1 + 3a*(y-y_c)^2), the exact implicit derivative.
double eval_scurve_derivative(const SCurveParams& params, double x);

/// y_net(x) = sum_i p_i * y_i(x). Linear in the weights.
double eval_superposition(const Superposition& sup, double x);

/// d y_net/dx = sum_i p_i * m_i / (1 + 3a*(y_i-y_ci)^2).
double eval_superposition_derivative(const Superposition& sup, double x);

}  // namespace samcurve
