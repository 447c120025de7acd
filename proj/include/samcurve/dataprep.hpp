#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace samcurve {

/// Raw measurement column: one attribute of one group.
struct SampleColumn {
    std::vector<double> values;
    std::string label;  ///< attribute name, e.g. "sepal_length"
    std::string group;  ///< class label, e.g. "Iris-setosa"
};

/// Empirical CDF over the unique sorted sample values.
struct EmpiricalCdf {
    std::vector<double> xs;              ///< strictly increasing unique values
    std::vector<double> fractions;       ///< cumulative counts / total, last == 1
    std::vector<std::size_t> counts;     ///< occurrences of each unique value
};

/// Generic (x, y) table used as a fitting target: an ECDF, an analytic
/// curve sample, or an ECDF with a correction point spliced in.
struct CurveTable {
    std::vector<double> xs;
    std::vector<double> ys;
};

/// Normalized histogram: relative frequency per bin, masses sum to 1.
struct HistogramSpec {
    std::vector<double> edges;   ///< size = bins + 1, uniform over [min, max]
    std::vector<double> masses;  ///< size = bins
};

enum class InflectionStrategy {
    SlopeMidpoint,   ///< midpoints of the steepest segments
    ModeFrequency,   ///< most frequently observed values
};

/// Candidate inflection points, ordered by selection priority.
struct InflectionSet {
    std::vector<std::pair<double, double>> points;  ///< (x_c, y_c)
    InflectionStrategy strategy = InflectionStrategy::SlopeMidpoint;
};

/// Thrown when a CSV row cannot be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, std::size_t line)
        : std::runtime_error(std::move(message)), line_(line) {}
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Thrown when a row's class label is not in the schema's group list.
class SchemaError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV layout: numeric attribute columns followed by one class-label column.
struct CsvSchema {
    std::vector<std::string> attributes;  ///< names for the numeric columns
    std::vector<std::string> groups;      ///< allowed class labels; empty = accept any
};

/// Schema of the bundled iris file: 4 attributes x 3 species.
CsvSchema iris_schema();

EmpiricalCdf build_ecdf(const SampleColumn& samples);

CurveTable to_table(const EmpiricalCdf& cdf);

/// Steepest-segment midpoints, descending |slope|; ties go to the later
/// segment. Works on any monotone-x table.
InflectionSet select_inflections_slope(const CurveTable& table, std::size_t count);
InflectionSet select_inflections_slope(const EmpiricalCdf& cdf, std::size_t count);

/// Most frequent values, descending count; ties go to the larger value.
InflectionSet select_inflections_mode(const EmpiricalCdf& cdf, std::size_t count);

/// Uniform binning over [min, max]; bin count is the larger of the Sturges
/// and Freedman-Diaconis estimates (FD skipped when IQR is zero).
HistogramSpec auto_histogram(const SampleColumn& samples);

/// Equally spaced samples of the logistic sigmoid 1/(1+exp(-x)).
CurveTable gen_sigmoid_target(double lo, double hi, std::size_t points);

/// Equally spaced samples of the standard normal CDF (density peak
/// 1/sqrt(2*pi)); accurate to well below 1e-10 absolute.
CurveTable gen_erf_target(double lo, double hi, std::size_t points);

/// Standard normal CDF used by gen_erf_target; exposed for testing.
double standard_normal_cdf(double x);

/// Splice a zero-frequency point into the ECDF at x0: the new point carries
/// the cumulative fraction of the value just below it (0 before the first).
CurveTable inject_zero_point(const EmpiricalCdf& cdf, double x0);

/// Parse a CSV of measurement rows into one SampleColumn per
/// (attribute, group) pair, grouped in attribute-major order and groups in
/// order of first appearance. A header row is detected and skipped.
std::vector<SampleColumn> load_csv(const std::string& path, const CsvSchema& schema);

}  // namespace samcurve
