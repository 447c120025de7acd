#include "samcurve/scurve.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace samcurve {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("non-finite ") + what);
    }
}

void check_params(const SCurveParams& p, double x) {
    require_finite(p.a, "parameter a");
    require_finite(p.m, "parameter m");
    require_finite(p.x_c, "parameter x_c");
    require_finite(p.y_c, "parameter y_c");
    require_finite(x, "x");
    if (p.a < kMinPerturbation) {
        throw std::domain_error("perturbation parameter a below lower bound 1e-9");
    }
}

}  // namespace

double perturbed_line_root(double a, double t) {
    const double s = std::fabs(t);
    // Cardano for u^3 + u/a = s/a: u = c2 - c1 with
    //   c2^3 = s/(2a) + D,  c1^3 = D - s/(2a),  D = sqrt((s/2a)^2 + 1/(27a^3)).
    // Both cube-root arguments are kept positive via c1^3 = (1/(27a^3)) / c2^3,
    // and the difference of cube roots is rationalized to (s/a)/(c2^2+c1c2+c1^2),
    // which removes the cancellation at small |t|.
    const double half = s / (2.0 * a);
    const double q3 = 1.0 / (27.0 * a * a * a);
    const double w = (half > 1e150) ? 2.0 * half : half + std::sqrt(half * half + q3);
    const double c2 = std::cbrt(w);
    const double c1 = (c2 > 0.0) ? 1.0 / (3.0 * a * c2) : 0.0;
    const double denom = c2 * c2 + c1 * c2 + c1 * c1;
    double v = (denom > 0.0) ? (s / a) / denom : 0.0;
    // One Newton step on f(v) = a v^3 + v - s; f' >= 1, so the step is safe.
    v -= (a * v * v * v + v - s) / (3.0 * a * v * v + 1.0);
    return std::signbit(t) ? -v : v;
}

double eval_scurve(const SCurveParams& params, double x) {
    check_params(params, x);
    return params.y_c + perturbed_line_root(params.a, params.m * (x - params.x_c));
}

double eval_scurve_derivative(const SCurveParams& params, double x) {
    check_params(params, x);
    const double u = perturbed_line_root(params.a, params.m * (x - params.x_c));
    return params.m / (1.0 + 3.0 * params.a * u * u);
}

Superposition::Superposition(double a, std::vector<Component> components)
    : a_(a), components_(std::move(components)) {
    require_finite(a_, "parameter a");
    if (a_ < kMinPerturbation) {
        throw std::domain_error("perturbation parameter a below lower bound 1e-9");
    }
    if (components_.empty()) {
        throw std::invalid_argument("superposition needs at least one component");
    }
    for (const Component& c : components_) {
        require_finite(c.weight, "component weight");
        require_finite(c.slope, "component slope");
        require_finite(c.x_c, "component x_c");
        require_finite(c.y_c, "component y_c");
    }
}

double Superposition::linear_slope_sum() const {
    double total = 0.0;
    for (const Component& c : components_) total += c.weight * c.slope;
    return total;
}

double eval_superposition(const Superposition& sup, double x) {
    require_finite(x, "x");
    double total = 0.0;
    for (const Component& c : sup.components()) {
        total += c.weight * (perturbed_line_root(sup.a(), c.slope * (x - c.x_c)) + c.y_c);
    }
    return total;
}

double eval_superposition_derivative(const Superposition& sup, double x) {
    require_finite(x, "x");
    double total = 0.0;
    for (const Component& c : sup.components()) {
        const double u = perturbed_line_root(sup.a(), c.slope * (x - c.x_c));
        total += c.weight * c.slope / (1.0 + 3.0 * sup.a() * u * u);
    }
    return total;
}

}  // namespace samcurve
