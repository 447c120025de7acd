// samfit: fit singularly perturbed line models to empirical CDFs and
// analytic sigmoid targets, and report the characterization measures.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "samcurve/dataprep.hpp"
#include "samcurve/fitter.hpp"
#include "samcurve/measures.hpp"
#include "samcurve/report_io.hpp"
#include "samcurve/scurve.hpp"
#include "samcurve/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace samcurve;

namespace {

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kOrange = "#ff7f0e";
constexpr const char* kGreen = "#2ca02c";
constexpr const char* kGray = "#555555";

struct EmitFlags {
    bool json_out = true;
    bool csv = true;
    bool svg = true;
};

EmitFlags parse_emit(const std::string& spec) {
    EmitFlags flags{false, false, false};
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "json") flags.json_out = true;
        else if (item == "csv") flags.csv = true;
        else if (item == "svg") flags.svg = true;
        else throw CLI::ValidationError("--emit", "unknown format '" + item + "'");
    }
    return flags;
}

std::pair<double, double> parse_interval(const std::string& spec) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
        throw CLI::ValidationError("--interval", "expected LO:HI, got '" + spec + "'");
    }
    try {
        const double lo = std::stod(spec.substr(0, colon));
        const double hi = std::stod(spec.substr(colon + 1));
        if (!(lo < hi)) throw std::invalid_argument("lo >= hi");
        return {lo, hi};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--interval", "expected LO:HI with LO < HI, got '" + spec +
                                                     "'");
    }
}

std::pair<std::size_t, std::size_t> parse_sweep(const std::string& spec) {
    const auto colon = spec.find(':');
    try {
        const long lo = std::stol(spec.substr(0, colon));
        const long hi = colon == std::string::npos ? lo : std::stol(spec.substr(colon + 1));
        if (lo < 1 || hi < lo) throw std::invalid_argument("bad range");
        return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--sweep", "expected LO:HI with 1 <= LO <= HI, got '" + spec +
                                                  "'");
    }
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string join_num(const std::vector<double>& values, const char* sep = ";") {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += num(values[i]);
    }
    return out;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

// Shared knobs for the fitting subcommands.
struct FitOptions {
    std::vector<std::size_t> n_values{1};
    double init_a = 1.0;
    std::vector<double> init_m;
    std::vector<double> init_p;
    std::string init_mode = "constant";
    double a_bound = kMinPerturbation;
    std::size_t max_iterations = 20000;
    std::string emit = "json,csv,svg";
    std::string out_dir = "out";

    FitConfig config(std::size_t n) const {
        FitConfig cfg;
        cfg.n = n;
        cfg.init_a = init_a;
        cfg.init_m = init_m;
        cfg.init_p = init_p;
        cfg.init_mode = init_mode == "slope-at-inflection" ? InitMode::SlopeAtInflection
                                                           : InitMode::Constant;
        cfg.a_lower_bound = a_bound;
        cfg.max_iterations = max_iterations;
        return cfg;
    }

    void add_to(CLI::App& cmd) {
        cmd.add_option("--n", n_values, "component counts to fit (repeatable)")
            ->check(CLI::PositiveNumber);
        cmd.add_option("--init-a", init_a, "initial perturbation parameter");
        cmd.add_option("--init-m", init_m, "initial slope(s); one value broadcasts");
        cmd.add_option("--init-p", init_p, "initial weight(s); one value broadcasts");
        cmd.add_option("--init-mode", init_mode, "constant | slope-at-inflection")
            ->check(CLI::IsMember({"constant", "slope-at-inflection"}));
        cmd.add_option("--a-bound", a_bound, "lower bound on a")->check(CLI::PositiveNumber);
        cmd.add_option("--max-iterations", max_iterations, "optimizer iteration budget");
        cmd.add_option("--emit", emit, "comma list of json,csv,svg");
        cmd.add_option("--out", out_dir, "output directory")->required();
    }
};

void append_measure_rows(std::map<std::string, std::vector<std::string>>& rows,
                         std::vector<std::string>& order, const SerializedFit& fit,
                         std::size_t column, std::size_t ncols) {
    auto put = [&](const std::string& key, const std::string& value) {
        auto it = rows.find(key);
        if (it == rows.end()) {
            order.push_back(key);
            it = rows.emplace(key, std::vector<std::string>(ncols)).first;
        }
        it->second[column] = value;
    };
    const Superposition& sup = fit.report.params;
    const auto& comps = sup.components();
    put("a", num(sup.a()));
    if (comps.size() == 1) {
        put("m", num(comps[0].slope));
    } else {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            put("p_" + std::to_string(i + 1), num(comps[i].weight));
            put("m_" + std::to_string(i + 1), num(comps[i].slope));
        }
    }
    std::vector<double> xcs, ycs;
    for (const Component& c : comps) {
        xcs.push_back(c.x_c);
        ycs.push_back(c.y_c);
    }
    put("x_c", join_num(xcs));
    put("y_c", join_num(ycs));
    if (comps.size() > 1) {
        put("m", num(fit.report.measures.m_max));
        put("NL", num(fit.report.measures.nl_percent));
    }
    if (fit.report.measures.m_bar) put("m_bar", num(*fit.report.measures.m_bar));
    put("m_over_1p_a", num(fit.report.measures.ratio));
    put("sse", num(fit.report.sse));
    put("converged", fit.report.converged ? "true" : "false");
}

// Report-table layout: quantities as rows, one column per fit.
std::string measure_table_csv(const std::vector<SerializedFit>& fits,
                              const std::vector<std::string>& column_names) {
    std::map<std::string, std::vector<std::string>> rows;
    std::vector<std::string> order;
    for (std::size_t c = 0; c < fits.size(); ++c) {
        append_measure_rows(rows, order, fits[c], c, fits.size());
    }
    std::string csv = "quantity";
    for (const std::string& name : column_names) csv += "," + name;
    csv += "\n";
    for (const std::string& key : order) {
        csv += key;
        for (const std::string& cell : rows.at(key)) csv += "," + cell;
        csv += "\n";
    }
    return csv;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k) {
        xs[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    }
    return xs;
}

std::vector<double> eval_many(const Superposition& sup, const std::vector<double>& xs) {
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) ys[k] = eval_superposition(sup, xs[k]);
    return ys;
}

std::vector<double> eval_deriv_many(const Superposition& sup, const std::vector<double>& xs,
                                    double scale = 1.0) {
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ys[k] = scale * eval_superposition_derivative(sup, xs[k]);
    }
    return ys;
}

void run_pool(std::size_t njobs, const std::function<void(std::size_t)>& work) {
    const std::size_t nthreads =
        std::min<std::size_t>(njobs, std::max(1u, std::thread::hardware_concurrency()));
    if (nthreads <= 1) {
        for (std::size_t k = 0; k < njobs; ++k) work(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        threads.emplace_back([&] {
            for (std::size_t k = next.fetch_add(1); k < njobs; k = next.fetch_add(1)) {
                try {
                    work(k);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : threads) th.join();
    if (error) std::rethrow_exception(error);
}

void write_reports_json(const fs::path& dir, const std::vector<SerializedFit>& fits) {
    json arr = json::array();
    for (const SerializedFit& f : fits) arr.push_back(to_json(f.report, f.context, f.config));
    write_text(dir / "fit_report.json", arr.dump(2) + "\n");
}

// ---------------------------------------------------------------- fit-cdf --

struct CdfArgs {
    std::string input;
    std::vector<std::string> attributes;
    std::vector<std::string> species;
    std::vector<std::string> schema_attrs;  // empty = bundled iris schema
    std::string strategy = "mode-frequency";
    std::optional<double> inject_x;
    FitOptions fit;

    CsvSchema schema() const {
        if (schema_attrs.empty()) return iris_schema();
        return CsvSchema{schema_attrs, {}};
    }
};

int cmd_fit_cdf(const CdfArgs& args) {
    const auto all_columns = load_csv(args.input, args.schema());

    std::vector<const SampleColumn*> selected;
    for (const SampleColumn& col : all_columns) {
        const bool attr_ok = args.attributes.empty() ||
                             std::find(args.attributes.begin(), args.attributes.end(),
                                       col.label) != args.attributes.end();
        const bool group_ok = args.species.empty() ||
                              std::find(args.species.begin(), args.species.end(), col.group) !=
                                  args.species.end();
        if (attr_ok && group_ok) selected.push_back(&col);
    }
    for (const std::string& a : args.attributes) {
        if (std::none_of(all_columns.begin(), all_columns.end(),
                         [&](const SampleColumn& c) { return c.label == a; })) {
            std::cerr << "samfit: unknown attribute '" << a << "'\n";
            return 2;
        }
    }
    for (const std::string& s : args.species) {
        if (std::none_of(all_columns.begin(), all_columns.end(),
                         [&](const SampleColumn& c) { return c.group == s; })) {
            std::cerr << "samfit: unknown species '" << s << "'\n";
            return 2;
        }
    }

    struct Job {
        const SampleColumn* column;
        std::size_t n;
    };
    std::vector<Job> jobs;
    for (const SampleColumn* col : selected) {
        for (std::size_t n : args.fit.n_values) jobs.push_back({col, n});
    }

    const EmitFlags emit = parse_emit(args.fit.emit);
    const fs::path out_dir(args.fit.out_dir);
    fs::create_directories(out_dir);

    std::vector<SerializedFit> fits(jobs.size());
    run_pool(jobs.size(), [&](std::size_t k) {
        const Job& job = jobs[k];
        const EmpiricalCdf cdf = build_ecdf(*job.column);
        const CurveTable table = args.inject_x ? inject_zero_point(cdf, *args.inject_x)
                                               : to_table(cdf);
        const InflectionSet inflections =
            args.strategy == "slope-midpoint"
                ? select_inflections_slope(table, job.n)
                : select_inflections_mode(cdf, job.n);
        const FitConfig cfg = args.fit.config(job.n);
        FitReport report = fit(table, inflections, cfg);
        const HistogramSpec hist = auto_histogram(*job.column);
        report.measures.m_bar = normalized_peak(report.params, hist);

        FitContext ctx;
        ctx.source = args.input;
        ctx.attribute = job.column->label;
        ctx.group = job.column->group;
        ctx.strategy = args.strategy;
        ctx.n = job.n;
        ctx.interval_lo = cdf.xs.front();
        ctx.interval_hi = cdf.xs.back();
        fits[k] = SerializedFit{std::move(report), std::move(ctx), cfg};
    });

    if (emit.json_out) write_reports_json(out_dir, fits);

    if (emit.csv) {
        // one table per (attribute, n), columns = species
        std::set<std::string> attrs;
        for (const SerializedFit& f : fits) attrs.insert(f.context.attribute);
        for (const std::string& attr : attrs) {
            for (std::size_t n : args.fit.n_values) {
                std::vector<SerializedFit> cols;
                std::vector<std::string> names;
                for (const SerializedFit& f : fits) {
                    if (f.context.attribute == attr && f.context.n == n) {
                        cols.push_back(f);
                        names.push_back(f.context.group);
                    }
                }
                if (cols.empty()) continue;
                write_text(out_dir / ("table_" + attr + "_n" + std::to_string(n) + ".csv"),
                           measure_table_csv(cols, names));
            }
        }
    }

    if (emit.svg) {
        for (std::size_t k = 0; k < fits.size(); ++k) {
            const SerializedFit& f = fits[k];
            const Job& job = jobs[k];
            const EmpiricalCdf cdf = build_ecdf(*job.column);
            const HistogramSpec hist = auto_histogram(*job.column);
            const double lo = cdf.xs.front(), hi = cdf.xs.back();
            const auto grid = linspace(lo - 0.05 * (hi - lo), hi + 0.05 * (hi - lo), 256);

            svg::Figure fig;
            svg::Panel& top = fig.add_panel();
            top.title = f.context.attribute + " / " + f.context.group + " (n=" +
                        std::to_string(f.context.n) + ")";
            top.x_label = f.context.attribute;
            top.y_label = "cumulative fraction";
            top.add_scatter(cdf.xs, cdf.fractions, kBlue, "data");
            if (args.inject_x) {
                const CurveTable t = inject_zero_point(cdf, *args.inject_x);
                top.add_scatter({*args.inject_x},
                                {t.ys[static_cast<std::size_t>(
                                    std::lower_bound(t.xs.begin(), t.xs.end(), *args.inject_x) -
                                    t.xs.begin())]},
                                kGreen, "injected");
            }
            top.add_line(grid, eval_many(f.report.params, grid), kOrange, "fit");

            svg::Panel& bottom = fig.add_panel();
            bottom.x_label = f.context.attribute;
            bottom.y_label = "relative frequency";
            bottom.add_stairs(hist.edges, hist.masses, kGray, "histogram");
            double edge_sum = 0.0;
            for (double e : hist.edges) {
                edge_sum += eval_superposition_derivative(f.report.params, e);
            }
            if (edge_sum != 0.0) {
                bottom.add_line(grid, eval_deriv_many(f.report.params, grid, 1.0 / edge_sum),
                                kOrange, "density");
            }
            fig.write((out_dir / (f.context.attribute + "_" + f.context.group + "_n" +
                                  std::to_string(f.context.n) + ".svg"))
                          .string());
        }
    }
    return 0;
}

// ------------------------------------------------------------- fit-target --

struct TargetArgs {
    std::string target;
    std::string interval = "-5:5";
    std::size_t points = 101;
    std::string strategy = "slope-midpoint";
    FitOptions fit;
};

CurveTable make_target(const std::string& name, double lo, double hi, std::size_t points) {
    if (name == "sigmoid") return gen_sigmoid_target(lo, hi, points);
    if (name == "erf") return gen_erf_target(lo, hi, points);
    throw CLI::ValidationError("--target", "unknown target '" + name + "'");
}

std::vector<double> target_density(const std::string& name, const std::vector<double>& xs) {
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (name == "sigmoid") {
            const double s = 1.0 / (1.0 + std::exp(-xs[k]));
            ys[k] = s * (1.0 - s);
        } else {
            ys[k] = std::exp(-0.5 * xs[k] * xs[k]) / std::sqrt(2.0 * 3.14159265358979323846);
        }
    }
    return ys;
}

SerializedFit run_target_fit(const TargetArgs& args, std::size_t n) {
    const auto [lo, hi] = parse_interval(args.interval);
    const CurveTable table = make_target(args.target, lo, hi, args.points);
    const InflectionSet inflections = select_inflections_slope(table, n);
    const FitConfig cfg = args.fit.config(n);
    FitReport report = fit(table, inflections, cfg);

    FitContext ctx;
    ctx.source = args.target;
    ctx.strategy = "slope-midpoint";
    ctx.n = n;
    ctx.interval_lo = lo;
    ctx.interval_hi = hi;
    return SerializedFit{std::move(report), std::move(ctx), cfg};
}

void write_target_svg(const fs::path& path, const TargetArgs& args, const SerializedFit& f) {
    const auto [lo, hi] = parse_interval(args.interval);
    const CurveTable table = make_target(args.target, lo, hi, args.points);
    const auto grid = linspace(lo, hi, 256);

    svg::Figure fig;
    svg::Panel& top = fig.add_panel();
    top.title = args.target + " (n=" + std::to_string(f.context.n) + ")";
    top.y_label = "y";
    top.add_scatter(table.xs, table.ys, kBlue, "target");
    top.add_line(grid, eval_many(f.report.params, grid), kOrange, "fit");

    svg::Panel& bottom = fig.add_panel();
    bottom.x_label = "x";
    bottom.y_label = "dy/dx";
    bottom.add_line(grid, target_density(args.target, grid), kBlue, "target");
    bottom.add_line(grid, eval_deriv_many(f.report.params, grid), kOrange, "fit");
    fig.write(path.string());
}

int cmd_fit_target(const TargetArgs& args) {
    const EmitFlags emit = parse_emit(args.fit.emit);
    const fs::path out_dir(args.fit.out_dir);
    fs::create_directories(out_dir);

    std::vector<SerializedFit> fits(args.fit.n_values.size());
    run_pool(fits.size(),
             [&](std::size_t k) { fits[k] = run_target_fit(args, args.fit.n_values[k]); });

    if (emit.json_out) write_reports_json(out_dir, fits);
    if (emit.csv) {
        std::vector<std::string> names;
        for (const SerializedFit& f : fits) names.push_back("n" + std::to_string(f.context.n));
        write_text(out_dir / ("table_" + args.target + ".csv"), measure_table_csv(fits, names));
    }
    if (emit.svg) {
        for (const SerializedFit& f : fits) {
            write_target_svg(out_dir / (args.target + "_n" + std::to_string(f.context.n) +
                                        ".svg"),
                             args, f);
        }
    }
    return 0;
}

// ------------------------------------------------------------------ sweep --

struct SweepArgs {
    std::string sweep_range = "1:4";
    TargetArgs target;   // target mode
    CdfArgs cdf;         // dataset mode
    bool use_target = false;
};

int cmd_sweep(SweepArgs& args) {
    FitOptions& fit_opts = args.use_target ? args.target.fit : args.cdf.fit;
    const auto [n_lo, n_hi] = parse_sweep(args.sweep_range);
    fit_opts.n_values.clear();
    for (std::size_t n = n_lo; n <= n_hi; ++n) fit_opts.n_values.push_back(n);
    if (args.use_target) return cmd_fit_target(args.target);
    return cmd_fit_cdf(args.cdf);
}

// ----------------------------------------------------------------- report --

int cmd_report(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<SerializedFit> fits;
    for (const std::string& dir : inputs) {
        const fs::path file = fs::path(dir) / "fit_report.json";
        if (!fs::exists(file)) continue;
        std::ifstream in(file);
        json arr = json::parse(in);
        for (const json& j : arr) fits.push_back(report_from_json(j));
    }
    if (fits.empty()) {
        std::cerr << "samfit: no fit_report.json artifacts found\n";
        return 2;
    }
    const fs::path out_dir(out);
    fs::create_directories(out_dir);

    auto series_name = [](const FitContext& c) {
        std::string name = c.source;
        if (!c.attribute.empty()) name += ":" + c.attribute;
        if (!c.group.empty()) name += ":" + c.group;
        return name;
    };

    // comparison table: one row per fit, measures side by side
    std::string comparison =
        "series,n,a,m,m_over_1p_a,NL,m_bar,sse,iterations,converged\n";
    std::vector<std::size_t> order(fits.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const auto key = [&](std::size_t k) {
            return std::make_pair(series_name(fits[k].context), fits[k].context.n);
        };
        return key(i) < key(j);
    });
    for (std::size_t k : order) {
        const SerializedFit& f = fits[k];
        comparison += series_name(f.context) + "," + std::to_string(f.context.n) + "," +
                      num(f.report.params.a()) + "," + num(f.report.measures.m_max) + "," +
                      num(f.report.measures.ratio) + "," + num(f.report.measures.nl_percent) +
                      "," + (f.report.measures.m_bar ? num(*f.report.measures.m_bar) : "") +
                      "," + num(f.report.sse) + "," + std::to_string(f.report.iterations) +
                      "," + (f.report.converged ? "true" : "false") + "\n";
    }
    write_text(out_dir / "comparison.csv", comparison);

    // NL vs n: wide table, one column per series
    std::map<std::string, std::map<std::size_t, double>> nl_series;
    std::set<std::size_t> all_n;
    for (const SerializedFit& f : fits) {
        nl_series[series_name(f.context)][f.context.n] = f.report.measures.nl_percent;
        all_n.insert(f.context.n);
    }
    std::string nl_csv = "n";
    for (const auto& [name, _] : nl_series) nl_csv += "," + name;
    nl_csv += "\n";
    for (std::size_t n : all_n) {
        nl_csv += std::to_string(n);
        for (const auto& [name, by_n] : nl_series) {
            auto it = by_n.find(n);
            nl_csv += ",";
            if (it != by_n.end()) nl_csv += num(it->second);
        }
        nl_csv += "\n";
    }
    write_text(out_dir / "nl_vs_n.csv", nl_csv);

    svg::Figure fig;
    svg::Panel& panel = fig.add_panel();
    panel.title = "percentage nonlinearity vs n";
    panel.x_label = "n";
    panel.y_label = "NL";
    const char* palette[] = {kBlue, kOrange, kGreen, "#d62728", "#9467bd", "#8c564b"};
    std::size_t color_idx = 0;
    for (const auto& [name, by_n] : nl_series) {
        std::vector<double> xs, ys;
        for (const auto& [n, nl] : by_n) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(nl);
        }
        const char* color = palette[color_idx++ % 6];
        panel.add_line(xs, ys, color, name);
        panel.add_scatter(xs, ys, color);
    }
    fig.write((out_dir / "nl_vs_n.svg").string());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"S-curve models from singularly perturbed lines: fitting and measures"};
    app.require_subcommand(1);

    CdfArgs cdf_args;
    CLI::App* fit_cdf = app.add_subcommand("fit-cdf", "fit empirical CDFs from a CSV column");
    fit_cdf->add_option("--input", cdf_args.input, "CSV file (attributes..., class)")
        ->required();
    fit_cdf->add_option("--attribute", cdf_args.attributes, "attribute filter (repeatable)");
    fit_cdf->add_option("--species", cdf_args.species, "class filter (repeatable)");
    fit_cdf->add_option("--schema", cdf_args.schema_attrs,
                        "numeric column names (default: bundled iris schema)");
    fit_cdf->add_option("--strategy", cdf_args.strategy, "inflection selection strategy")
        ->check(CLI::IsMember({"mode-frequency", "slope-midpoint"}));
    double inject_x = 0.0;
    CLI::Option* inject_opt = fit_cdf->add_option(
        "--inject-zero-point", inject_x, "splice a zero-frequency point at this x");
    cdf_args.fit.add_to(*fit_cdf);

    TargetArgs target_args;
    CLI::App* fit_target = app.add_subcommand("fit-target", "fit an analytic sigmoid target");
    fit_target->add_option("--target", target_args.target, "sigmoid | erf")
        ->required()
        ->check(CLI::IsMember({"sigmoid", "erf"}));
    fit_target->add_option("--interval", target_args.interval, "sample interval LO:HI");
    fit_target->add_option("--points", target_args.points, "grid points")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
    target_args.fit.add_to(*fit_target);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "fit a range of n and collect reports");
    sweep->add_option("--sweep", sweep_args.sweep_range, "component count range LO:HI")
        ->required();
    sweep->add_option("--target", sweep_args.target.target, "sigmoid | erf")
        ->check(CLI::IsMember({"sigmoid", "erf"}));
    sweep->add_option("--interval", sweep_args.target.interval, "sample interval LO:HI");
    sweep->add_option("--points", sweep_args.target.points, "grid points");
    sweep->add_option("--input", sweep_args.cdf.input, "CSV file (dataset mode)");
    sweep->add_option("--attribute", sweep_args.cdf.attributes, "attribute filter");
    sweep->add_option("--schema", sweep_args.cdf.schema_attrs,
                      "numeric column names (default: bundled iris schema)");
    sweep->add_option("--species", sweep_args.cdf.species, "class filter");
    sweep->add_option("--strategy", sweep_args.cdf.strategy, "inflection selection strategy")
        ->check(CLI::IsMember({"mode-frequency", "slope-midpoint"}));
    FitOptions sweep_fit;
    sweep->add_option("--init-a", sweep_fit.init_a, "initial perturbation parameter");
    sweep->add_option("--init-m", sweep_fit.init_m, "initial slope(s)");
    sweep->add_option("--init-p", sweep_fit.init_p, "initial weight(s)");
    sweep->add_option("--init-mode", sweep_fit.init_mode, "constant | slope-at-inflection")
        ->check(CLI::IsMember({"constant", "slope-at-inflection"}));
    sweep->add_option("--a-bound", sweep_fit.a_bound, "lower bound on a");
    sweep->add_option("--max-iterations", sweep_fit.max_iterations, "iteration budget");
    sweep->add_option("--emit", sweep_fit.emit, "comma list of json,csv,svg");
    sweep->add_option("--out", sweep_fit.out_dir, "output directory")->required();

    std::vector<std::string> report_inputs;
    std::string report_out = "out";
    CLI::App* report = app.add_subcommand("report", "aggregate fit reports");
    report->add_option("--input", report_inputs, "directories with fit_report.json")
        ->required();
    report->add_option("--out", report_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (fit_cdf->parsed()) {
            if (*inject_opt) cdf_args.inject_x = inject_x;
            return cmd_fit_cdf(cdf_args);
        }
        if (fit_target->parsed()) return cmd_fit_target(target_args);
        if (sweep->parsed()) {
            sweep_args.use_target = !sweep_args.target.target.empty();
            if (!sweep_args.use_target && sweep_args.cdf.input.empty()) {
                std::cerr << "samfit: sweep needs either --target or --input\n";
                return 2;
            }
            sweep_args.target.fit = sweep_fit;
            sweep_args.cdf.fit = sweep_fit;
            return cmd_sweep(sweep_args);
        }
        if (report->parsed()) return cmd_report(report_inputs, report_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "samfit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "samfit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
