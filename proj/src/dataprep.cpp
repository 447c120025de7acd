#include "samcurve/dataprep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace samcurve {

namespace {

void require_nonempty(const SampleColumn& samples) {
    if (samples.values.empty()) {
        throw std::invalid_argument("empty sample column '" + samples.label + "'");
    }
    for (double v : samples.values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("non-finite value in sample column '" + samples.label + "'");
        }
    }
}

// Linearly interpolated quantile over the sorted copy, q in [0, 1].
double quantile(std::vector<double> sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

EmpiricalCdf build_ecdf(const SampleColumn& samples) {
    require_nonempty(samples);
    std::vector<double> sorted = samples.values;
    std::sort(sorted.begin(), sorted.end());

    EmpiricalCdf cdf;
    for (double v : sorted) {
        if (cdf.xs.empty() || v != cdf.xs.back()) {
            cdf.xs.push_back(v);
            cdf.counts.push_back(1);
        } else {
            ++cdf.counts.back();
        }
    }
    const auto total = static_cast<double>(sorted.size());
    std::size_t running = 0;
    cdf.fractions.reserve(cdf.xs.size());
    for (std::size_t c : cdf.counts) {
        running += c;
        cdf.fractions.push_back(static_cast<double>(running) / total);
    }
    return cdf;
}

CurveTable to_table(const EmpiricalCdf& cdf) {
    return CurveTable{cdf.xs, cdf.fractions};
}

InflectionSet select_inflections_slope(const CurveTable& table, std::size_t count) {
    const std::size_t npts = table.xs.size();
    if (npts < 2) {
        throw std::invalid_argument("slope selection needs at least two points");
    }
    const std::size_t nseg = npts - 1;
    if (count < 1 || count > nseg) {
        throw std::out_of_range("inflection count out of range: have " + std::to_string(nseg) +
                                " segments, requested " + std::to_string(count));
    }
    std::vector<double> slopes(nseg);
    for (std::size_t k = 0; k < nseg; ++k) {
        slopes[k] = (table.ys[k + 1] - table.ys[k]) / (table.xs[k + 1] - table.xs[k]);
    }
    // Stable ascending sort by |slope|, then walk from the top: ties resolve
    // toward the later segment.
    std::vector<std::size_t> order(nseg);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::fabs(slopes[i]) < std::fabs(slopes[j]);
    });

    InflectionSet result;
    result.strategy = InflectionStrategy::SlopeMidpoint;
    for (std::size_t r = 0; r < count; ++r) {
        const std::size_t k = order[nseg - 1 - r];
        result.points.emplace_back((table.xs[k] + table.xs[k + 1]) / 2.0,
                                   (table.ys[k] + table.ys[k + 1]) / 2.0);
    }
    return result;
}

InflectionSet select_inflections_slope(const EmpiricalCdf& cdf, std::size_t count) {
    return select_inflections_slope(to_table(cdf), count);
}

InflectionSet select_inflections_mode(const EmpiricalCdf& cdf, std::size_t count) {
    const std::size_t n = cdf.xs.size();
    if (count < 1 || count > n) {
        throw std::out_of_range("inflection count out of range: have " + std::to_string(n) +
                                " unique values, requested " + std::to_string(count));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return cdf.counts[i] < cdf.counts[j];
    });

    InflectionSet result;
    result.strategy = InflectionStrategy::ModeFrequency;
    for (std::size_t r = 0; r < count; ++r) {
        const std::size_t k = order[n - 1 - r];
        result.points.emplace_back(cdf.xs[k], cdf.fractions[k]);
    }
    return result;
}

HistogramSpec auto_histogram(const SampleColumn& samples) {
    require_nonempty(samples);
    std::vector<double> sorted = samples.values;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    if (lo == hi) {
        throw std::invalid_argument("degenerate data: all " + std::to_string(sorted.size()) +
                                    " values equal " + std::to_string(lo) +
                                    ", cannot choose a bin width");
    }
    const auto n = static_cast<double>(sorted.size());
    const double range = hi - lo;

    auto bins = static_cast<std::size_t>(std::ceil(std::log2(n))) + 1;  // Sturges
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    if (iqr > 0.0) {
        const double fd_width = 2.0 * iqr * std::pow(n, -1.0 / 3.0);
        const auto fd_bins = static_cast<std::size_t>(std::ceil(range / fd_width));
        bins = std::max(bins, fd_bins);
    }

    HistogramSpec hist;
    hist.edges.resize(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k) {
        hist.edges[k] = lo + range * static_cast<double>(k) / static_cast<double>(bins);
    }
    hist.edges.back() = hi;

    hist.masses.assign(bins, 0.0);
    for (double v : sorted) {
        auto k = static_cast<std::size_t>((v - lo) / range * static_cast<double>(bins));
        if (k >= bins) k = bins - 1;  // right edge of the last bin is inclusive
        hist.masses[k] += 1.0 / n;
    }
    return hist;
}

namespace {

CurveTable sample_curve(double lo, double hi, std::size_t points, double (*fn)(double)) {
    if (!(lo < hi)) {
        throw std::out_of_range("empty interval: need lo < hi");
    }
    if (points < 2) {
        throw std::invalid_argument("need at least two sample points");
    }
    CurveTable table;
    table.xs.reserve(points);
    table.ys.reserve(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double x =
            lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        table.xs.push_back(x);
        table.ys.push_back(fn(x));
    }
    table.xs.back() = hi;
    table.ys.back() = fn(hi);
    return table;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

double standard_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

CurveTable gen_sigmoid_target(double lo, double hi, std::size_t points) {
    return sample_curve(lo, hi, points, &logistic);
}

CurveTable gen_erf_target(double lo, double hi, std::size_t points) {
    return sample_curve(lo, hi, points, &standard_normal_cdf);
}

CurveTable inject_zero_point(const EmpiricalCdf& cdf, double x0) {
    if (!std::isfinite(x0)) {
        throw std::invalid_argument("non-finite correction point");
    }
    CurveTable table = to_table(cdf);
    auto pos = std::lower_bound(table.xs.begin(), table.xs.end(), x0);
    if (pos != table.xs.end() && *pos == x0) {
        return table;  // already a data point; zero extra frequency changes nothing
    }
    const auto idx = static_cast<std::size_t>(pos - table.xs.begin());
    const double y0 = (idx == 0) ? 0.0 : table.ys[idx - 1];
    table.xs.insert(pos, x0);
    table.ys.insert(table.ys.begin() + static_cast<std::ptrdiff_t>(idx), y0);
    return table;
}

CsvSchema iris_schema() {
    return CsvSchema{
        {"sepal_length", "sepal_width", "petal_length", "petal_width"},
        {"Iris-setosa", "Iris-versicolor", "Iris-virginica"},
    };
}

std::vector<SampleColumn> load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    const std::size_t nattr = schema.attributes.size();

    std::vector<std::string> groups = schema.groups;
    const bool fixed_groups = !groups.empty();
    // columns[g * nattr + a]
    std::vector<std::vector<double>> columns(groups.size() * nattr);

    std::string line;
    std::size_t lineno = 0;
    bool saw_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");

        if (fields.size() != nattr + 1) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(nattr + 1) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        }

        std::vector<double> row(nattr);
        bool numeric = true;
        for (std::size_t a = 0; a < nattr; ++a) {
            std::size_t used = 0;
            try {
                row[a] = std::stod(fields[a], &used);
            } catch (const std::exception&) {
                numeric = false;
                break;
            }
            if (used != fields[a].size()) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (lineno == 1 && !saw_row) continue;  // header row
            throw ParseError("line " + std::to_string(lineno) + ": non-numeric field", lineno);
        }
        saw_row = true;

        const std::string& label = fields[nattr];
        auto git = std::find(groups.begin(), groups.end(), label);
        if (git == groups.end()) {
            if (fixed_groups) {
                throw SchemaError("line " + std::to_string(lineno) + ": unknown class '" +
                                  label + "'");
            }
            groups.push_back(label);
            columns.resize(groups.size() * nattr);
            git = groups.end() - 1;
        }
        const auto g = static_cast<std::size_t>(git - groups.begin());
        for (std::size_t a = 0; a < nattr; ++a) {
            columns[g * nattr + a].push_back(row[a]);
        }
    }
    if (!saw_row) {
        throw ParseError("no data rows in '" + path + "'", lineno);
    }

    std::vector<SampleColumn> result;
    result.reserve(columns.size());
    for (std::size_t a = 0; a < nattr; ++a) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (columns[g * nattr + a].empty()) continue;  // pinned group absent from file
            SampleColumn col;
            col.values = columns[g * nattr + a];
            col.label = schema.attributes[a];
            col.group = groups[g];
            result.push_back(std::move(col));
        }
    }
    return result;
}

}  // namespace samcurve
