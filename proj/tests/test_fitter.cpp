#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "samcurve/dataprep.hpp"
#include "samcurve/fitter.hpp"

using namespace samcurve;

namespace {

std::string data_dir() {
    const char* env = std::getenv("SAMCURVE_DATA");
    REQUIRE_MESSAGE(env != nullptr, "SAMCURVE_DATA must point at the data directory");
    return env;
}

InflectionSet fixed_points(std::vector<std::pair<double, double>> points) {
    return InflectionSet{std::move(points), InflectionStrategy::SlopeMidpoint};
}

}  // namespace

TEST_CASE("residuals vanish for an interpolating model and mirror the data for a zero one") {
    const Superposition truth(2.0, {Component{1.0, 0.5, 0.0, 0.0}});
    CurveTable data;
    for (double x = -3.0; x <= 3.0; x += 0.25) {
        data.xs.push_back(x);
        data.ys.push_back(eval_superposition(truth, x));
    }
    for (double r : residuals(truth, data)) CHECK(r == doctest::Approx(0.0).epsilon(1e-15));

    const Superposition zero(2.0, {Component{0.0, 0.5, 0.0, 0.0}});
    const auto rz = residuals(zero, data);
    for (std::size_t k = 0; k < rz.size(); ++k) {
        CHECK(rz[k] == doctest::Approx(-data.ys[k]).epsilon(1e-15));
    }
    CHECK_THROWS_AS(residuals(zero, CurveTable{}), std::invalid_argument);
}

TEST_CASE("round trip recovers known parameters") {
    const Superposition truth(2.0, {Component{1.0, 0.5, 0.0, 0.0}});
    CurveTable data;
    for (double x = -4.0; x <= 4.0; x += 0.2) {
        data.xs.push_back(x);
        data.ys.push_back(eval_superposition(truth, x));
    }
    FitConfig config;  // init a=1, m=0.1
    const FitReport report = fit(data, fixed_points({{0.0, 0.0}}), config);
    CHECK(report.converged);
    CHECK(report.params.a() == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(report.params.components()[0].slope == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(report.sse <= 1e-12);
}

TEST_CASE("iris setosa sepal length reproduces the reference n=1 estimate") {
    const auto columns = load_csv(data_dir() + "/iris.csv", iris_schema());
    const EmpiricalCdf cdf = build_ecdf(columns[0]);
    FitConfig config;
    const FitReport report =
        fit(cdf, select_inflections_mode(cdf, 1), config);
    CHECK(report.converged);
    CHECK(report.params.a() == doctest::Approx(1.519780).epsilon(1e-3));
    CHECK(report.params.components()[0].slope == doctest::Approx(1.086830).epsilon(1e-4));
    // at least as good as the reference parameters under the same objective
    const Superposition reference(1.519780, {Component{1.0, 1.086830, 5.1, 0.72}});
    CHECK(report.sse <= sum_squared_residuals(reference, to_table(cdf)));
}

TEST_CASE("descent and bound invariants") {
    // a straight line drives a to its lower bound
    CurveTable line;
    for (double x = 0.0; x <= 2.0; x += 0.1) {
        line.xs.push_back(x);
        line.ys.push_back(0.4 * x);
    }
    FitConfig config;
    const FitReport report = fit(line, fixed_points({{1.0, 0.4}}), config);
    CHECK(report.sse <= report.initial_sse);
    CHECK(report.params.a() >= config.a_lower_bound);
    CHECK(report.params.components()[0].slope == doctest::Approx(0.4).epsilon(1e-5));
}

TEST_CASE("forward-difference jacobian matches central differences") {
    const CurveTable data = gen_sigmoid_target(-3.0, 3.0, 21);
    const Superposition at(1.3, {Component{0.8, 1.1, -0.4, 0.3}, Component{1.2, 0.6, 0.5, 0.7}});

    // forward differences with the fitter's step vs central differences with
    // a smaller one, column by column over [a, p1, p2, m1, m2]
    auto perturbed = [&](int j, double delta) {
        double a = at.a();
        auto comps = at.components();
        if (j == 0) a += delta;
        else if (j <= 2) comps[j - 1].weight += delta;
        else comps[j - 3].slope += delta;
        return Superposition(a, comps);
    };
    const auto r0 = residuals(at, data);
    for (int j = 0; j < 5; ++j) {
        const double base = j == 0 ? at.a()
                          : j <= 2 ? at.components()[j - 1].weight
                                   : at.components()[j - 3].slope;
        const double hf = 1e-6 * std::max(1.0, std::fabs(base));
        const double hc = 1e-7 * std::max(1.0, std::fabs(base));
        const auto rf = residuals(perturbed(j, hf), data);
        const auto rp = residuals(perturbed(j, hc), data);
        const auto rm = residuals(perturbed(j, -hc), data);
        for (std::size_t k = 0; k < r0.size(); ++k) {
            const double fwd = (rf[k] - r0[k]) / hf;
            const double central = (rp[k] - rm[k]) / (2.0 * hc);
            if (std::fabs(central) > 1e-6) {
                CHECK(fwd == doctest::Approx(central).epsilon(1e-4));
            }
        }
    }
}

TEST_CASE("fits are deterministic") {
    const CurveTable data = gen_sigmoid_target(-3.0, 3.0, 41);
    FitConfig config;
    config.n = 2;
    config.max_iterations = 300;
    const FitReport first = fit(data, select_inflections_slope(data, 2), config);
    const FitReport second = fit(data, select_inflections_slope(data, 2), config);
    CHECK(first.sse == second.sse);
    CHECK(first.iterations == second.iterations);
    CHECK(first.params.a() == second.params.a());
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(first.params.components()[i].weight == second.params.components()[i].weight);
        CHECK(first.params.components()[i].slope == second.params.components()[i].slope);
    }
}

TEST_CASE("iteration budget exhaustion is flagged, not thrown") {
    const CurveTable data = gen_erf_target(-3.0, 3.0, 51);
    FitConfig config;
    config.n = 3;
    config.max_iterations = 5;
    const FitReport report = fit(data, select_inflections_slope(data, 3), config);
    CHECK_FALSE(report.converged);
    CHECK(report.iterations == 5);
    CHECK(report.sse <= report.initial_sse);
}

TEST_CASE("local slope around plain and coincident points") {
    const CurveTable data{{0.0, 1.0, 2.0, 3.0}, {0.0, 0.1, 0.5, 0.6}};
    CHECK(local_slope(data, 1.5) == doctest::Approx(0.4));   // bracketing pair (1, 2)
    CHECK(local_slope(data, 1.0) == doctest::Approx(0.25));  // neighbors (0, 2)
    CHECK(local_slope(data, -5.0) == doctest::Approx(0.1));  // clamped to first pair
    CHECK(local_slope(data, 9.0) == doctest::Approx(0.1));   // clamped to last pair
    CHECK(local_slope(data, 0.0) == doctest::Approx(0.1));   // first point
    CHECK(local_slope(data, 3.0) == doctest::Approx(0.1));   // last point
}

TEST_CASE("slope-at-inflection initialization starts from zero weights") {
    const CurveTable data = gen_sigmoid_target(-3.0, 3.0, 31);
    FitConfig config;
    config.n = 2;
    config.init_mode = InitMode::SlopeAtInflection;
    config.max_iterations = 1;  // peek at the starting point via initial_sse
    const FitReport report = fit(data, select_inflections_slope(data, 2), config);
    // all-zero weights -> y_net = 0 -> initial SSE is sum of ys^2
    double expected = 0.0;
    for (double y : data.ys) expected += y * y;
    CHECK(report.initial_sse == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sweep of a single n equals a direct fit") {
    const CurveTable data = gen_sigmoid_target(-3.0, 3.0, 41);
    FitConfig config;
    config.max_iterations = 500;
    const auto reports = sweep_n(data, 1, 1, config);
    REQUIRE(reports.size() == 1);
    const FitReport direct = fit(data, select_inflections_slope(data, 1), config);
    CHECK(reports[0].sse == direct.sse);
    CHECK(reports[0].params.a() == direct.params.a());
}

TEST_CASE("sweep keeps every report and orders them by n") {
    const auto columns = load_csv(data_dir() + "/iris.csv", iris_schema());
    const EmpiricalCdf cdf = build_ecdf(columns[1]);  // versicolor sepal length
    FitConfig config;
    config.max_iterations = 400;
    const auto reports = sweep_n(cdf, InflectionStrategy::ModeFrequency, 1, 3, config);
    REQUIRE(reports.size() == 3);
    for (std::size_t k = 0; k < reports.size(); ++k) {
        CHECK(reports[k].params.size() == k + 1);
        CHECK(reports[k].sse <= reports[k].initial_sse);
    }
}

TEST_CASE("config validation") {
    FitConfig config;
    config.n = 0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = FitConfig{};
    config.init_a = -1.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = FitConfig{};
    config.init_m = {1.0, 2.0};  // size mismatch with n=1
    const CurveTable data = gen_sigmoid_target(-1.0, 1.0, 11);
    CHECK_THROWS_AS(fit(data, select_inflections_slope(data, 1), config),
                    std::invalid_argument);
}
