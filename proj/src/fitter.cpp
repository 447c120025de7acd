#include "samcurve/fitter.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace samcurve {

namespace {

constexpr double kInitialDamping = 1e-3;
constexpr double kMaxDamping = 1e15;

// Free-parameter layout: [a, m] for n=1 (p fixed at its initial value),
// [a, p_1..p_n, m_1..m_n] for n>1.
class Objective {
  public:
    Objective(const CurveTable& data, std::vector<Component> components, double a_lb)
        : data_(data), components_(std::move(components)), a_lb_(a_lb) {}

    std::size_t n() const { return components_.size(); }
    std::size_t free_params() const { return n() == 1 ? 2 : 1 + 2 * n(); }

    Eigen::VectorXd pack(double a) const {
        Eigen::VectorXd theta(free_params());
        theta[0] = a;
        if (n() == 1) {
            theta[1] = components_[0].slope;
        } else {
            for (std::size_t i = 0; i < n(); ++i) {
                theta[1 + i] = components_[i].weight;
                theta[1 + n() + i] = components_[i].slope;
            }
        }
        return theta;
    }

    Superposition unpack(const Eigen::VectorXd& theta) const {
        std::vector<Component> comps = components_;
        if (n() == 1) {
            comps[0].slope = theta[1];
        } else {
            for (std::size_t i = 0; i < n(); ++i) {
                comps[i].weight = theta[1 + i];
                comps[i].slope = theta[1 + n() + i];
            }
        }
        return Superposition(std::max(theta[0], a_lb_), std::move(comps));
    }

    void project(Eigen::VectorXd& theta) const { theta[0] = std::max(theta[0], a_lb_); }

    Eigen::VectorXd residuals_at(const Eigen::VectorXd& theta) const {
        const Superposition sup = unpack(theta);
        Eigen::VectorXd r(data_.xs.size());
        for (std::size_t k = 0; k < data_.xs.size(); ++k) {
            r[k] = eval_superposition(sup, data_.xs[k]) - data_.ys[k];
        }
        return r;
    }

    // Forward differences, step 1e-6 * max(1, |theta_j|).
    Eigen::MatrixXd jacobian_at(const Eigen::VectorXd& theta, const Eigen::VectorXd& r0) const {
        Eigen::MatrixXd jac(r0.size(), theta.size());
        for (Eigen::Index j = 0; j < theta.size(); ++j) {
            const double h = 1e-6 * std::max(1.0, std::fabs(theta[j]));
            Eigen::VectorXd probe = theta;
            probe[j] += h;
            project(probe);
            jac.col(j) = (residuals_at(probe) - r0) / h;
        }
        return jac;
    }

  private:
    const CurveTable& data_;
    std::vector<Component> components_;
    double a_lb_;
};

struct LmResult {
    Eigen::VectorXd theta;
    double sse = 0.0;
    double initial_sse = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

LmResult levenberg_marquardt(const Objective& obj, Eigen::VectorXd theta,
                             const FitConfig& config) {
    obj.project(theta);
    Eigen::VectorXd r = obj.residuals_at(theta);
    double sse = r.squaredNorm();

    LmResult result;
    result.initial_sse = sse;
    double damping = kInitialDamping;

    while (result.iterations < config.max_iterations) {
        ++result.iterations;
        const Eigen::MatrixXd jac = obj.jacobian_at(theta, r);
        const Eigen::VectorXd grad = jac.transpose() * r;
        if (grad.lpNorm<Eigen::Infinity>() < config.gradient_tol) {
            result.converged = true;
            break;
        }
        const Eigen::MatrixXd normal = jac.transpose() * jac;

        bool accepted = false;
        while (damping <= kMaxDamping) {
            Eigen::MatrixXd damped = normal;
            damped.diagonal().array() += damping;
            const Eigen::VectorXd step = damped.ldlt().solve(-grad);
            if (!step.allFinite()) {
                damping *= 10.0;
                continue;
            }
            Eigen::VectorXd candidate = theta + step;
            obj.project(candidate);
            const Eigen::VectorXd r_new = obj.residuals_at(candidate);
            const double sse_new = r_new.squaredNorm();
            if (std::isfinite(sse_new) && sse_new < sse) {
                const double rel = (sse - sse_new) / std::max(sse, 1e-300);
                theta = candidate;
                r = r_new;
                sse = sse_new;
                damping = std::max(damping / 10.0, 1e-300);
                accepted = true;
                if (rel < config.sse_rel_tol) result.converged = true;
                break;
            }
            damping *= 10.0;
        }
        if (!accepted) {
            // No improving step exists at any damping: a local minimum to
            // working precision.
            result.converged = true;
            break;
        }
        if (result.converged) break;
    }

    result.theta = theta;
    result.sse = sse;
    return result;
}

std::vector<Component> initial_components(const CurveTable& data,
                                          const InflectionSet& inflections,
                                          const FitConfig& config) {
    if (inflections.points.size() < config.n) {
        throw std::invalid_argument("need at least n inflection points: have " +
                                    std::to_string(inflections.points.size()) + ", n = " +
                                    std::to_string(config.n));
    }

    auto broadcast = [&](const std::vector<double>& src, double fallback) {
        std::vector<double> out(config.n, fallback);
        if (src.size() == 1) {
            std::fill(out.begin(), out.end(), src[0]);
        } else if (!src.empty()) {
            if (src.size() != config.n) {
                throw std::invalid_argument("per-component initial values must have size n");
            }
            out = src;
        }
        return out;
    };

    const double default_m = config.n == 1 ? 0.1 : 1.0;
    std::vector<double> m0 = broadcast(config.init_m, default_m);
    // Zero starting weights only make sense when the weights are free (n > 1);
    // for a single curve the weight is pinned at 1.
    const bool zero_weights = config.init_mode == InitMode::SlopeAtInflection && config.n > 1;
    std::vector<double> p0 = broadcast(config.init_p, zero_weights ? 0.0 : 1.0);

    if (config.init_mode == InitMode::SlopeAtInflection) {
        for (std::size_t i = 0; i < config.n; ++i) {
            m0[i] = local_slope(data, inflections.points[i].first);
        }
    }

    std::vector<Component> comps(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        comps[i] = Component{p0[i], m0[i], inflections.points[i].first,
                             inflections.points[i].second};
    }
    return comps;
}

}  // namespace

void FitConfig::validate() const {
    if (n < 1) throw std::invalid_argument("component count n must be >= 1");
    if (!(init_a > 0.0)) throw std::invalid_argument("init_a must be positive");
    if (!(a_lower_bound > 0.0)) throw std::invalid_argument("a_lower_bound must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (!(sse_rel_tol > 0.0)) throw std::invalid_argument("sse_rel_tol must be positive");
}

std::vector<double> residuals(const Superposition& sup, const CurveTable& data) {
    if (data.xs.empty()) throw std::invalid_argument("empty fit table");
    if (data.xs.size() != data.ys.size()) throw std::invalid_argument("ragged fit table");
    std::vector<double> r(data.xs.size());
    for (std::size_t k = 0; k < data.xs.size(); ++k) {
        r[k] = eval_superposition(sup, data.xs[k]) - data.ys[k];
    }
    return r;
}

std::vector<double> residuals(const Superposition& sup, const EmpiricalCdf& data) {
    return residuals(sup, to_table(data));
}

double sum_squared_residuals(const Superposition& sup, const CurveTable& data) {
    double total = 0.0;
    for (double r : residuals(sup, data)) total += r * r;
    return total;
}

double local_slope(const CurveTable& data, double x_c) {
    const std::size_t npts = data.xs.size();
    if (npts < 2) throw std::invalid_argument("slope needs at least two data points");
    // Bracketing pair around x_c; when x_c coincides with a data point, the
    // slope spans its two neighbors.
    auto hi = std::upper_bound(data.xs.begin(), data.xs.end(), x_c);
    auto hi_idx = static_cast<std::size_t>(hi - data.xs.begin());
    std::size_t lo_idx;
    if (hi_idx == 0) {
        lo_idx = 0;
        hi_idx = 1;
    } else if (data.xs[hi_idx - 1] == x_c) {
        lo_idx = (hi_idx >= 2) ? hi_idx - 2 : 0;
        if (hi_idx == npts) hi_idx = npts - 1;
        if (lo_idx == hi_idx) lo_idx = hi_idx - 1;
    } else if (hi_idx == npts) {
        lo_idx = npts - 2;
        hi_idx = npts - 1;
    } else {
        lo_idx = hi_idx - 1;
    }
    return (data.ys[hi_idx] - data.ys[lo_idx]) / (data.xs[hi_idx] - data.xs[lo_idx]);
}

FitReport fit(const CurveTable& data, const InflectionSet& inflections, const FitConfig& config) {
    config.validate();
    if (data.xs.empty()) throw std::invalid_argument("empty fit table");
    if (data.xs.size() != data.ys.size()) throw std::invalid_argument("ragged fit table");

    Objective obj(data, initial_components(data, inflections, config), config.a_lower_bound);
    Eigen::VectorXd theta0 = obj.pack(std::max(config.init_a, config.a_lower_bound));
    LmResult lm = levenberg_marquardt(obj, theta0, config);

    FitReport report{obj.unpack(lm.theta), lm.sse, lm.initial_sse, lm.iterations, lm.converged,
                     MeasureSet{}};

    const auto [min_it, max_it] = std::minmax_element(data.xs.begin(), data.xs.end());
    const double pad = 0.05 * (*max_it - *min_it);
    if (*min_it < *max_it) {
        report.measures = compute_measures(report.params, *min_it - pad, *max_it + pad);
    }
    return report;
}

FitReport fit(const EmpiricalCdf& data, const InflectionSet& inflections,
              const FitConfig& config) {
    return fit(to_table(data), inflections, config);
}

std::vector<FitReport> sweep_n(const CurveTable& data, std::size_t n_lo, std::size_t n_hi,
                               const FitConfig& config) {
    if (n_lo < 1 || n_lo > n_hi) throw std::invalid_argument("bad sweep range");
    if (data.xs.size() < 2 || n_hi > data.xs.size() - 1) {
        throw std::out_of_range("sweep upper bound exceeds the available segments");
    }
    std::vector<FitReport> reports;
    reports.reserve(n_hi - n_lo + 1);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        FitConfig cfg = config;
        cfg.n = n;
        reports.push_back(fit(data, select_inflections_slope(data, n), cfg));
    }
    return reports;
}

std::vector<FitReport> sweep_n(const EmpiricalCdf& data, InflectionStrategy strategy,
                               std::size_t n_lo, std::size_t n_hi, const FitConfig& config) {
    if (n_lo < 1 || n_lo > n_hi) throw std::invalid_argument("bad sweep range");
    const std::size_t capacity = strategy == InflectionStrategy::ModeFrequency
                                     ? data.xs.size()
                                     : (data.xs.size() < 2 ? 0 : data.xs.size() - 1);
    if (n_hi > capacity) {
        throw std::out_of_range("sweep upper bound exceeds the selectable inflection points");
    }
    std::vector<FitReport> reports;
    reports.reserve(n_hi - n_lo + 1);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        FitConfig cfg = config;
        cfg.n = n;
        const InflectionSet set = strategy == InflectionStrategy::ModeFrequency
                                      ? select_inflections_mode(data, n)
                                      : select_inflections_slope(data, n);
        reports.push_back(fit(data, set, cfg));
    }
    return reports;
}

}  // namespace samcurve
