#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "samcurve/fitter.hpp"

namespace samcurve {

/// Where a fit came from: echoed into every serialized report so that later
/// aggregation can group and label rows without re-running anything.
struct FitContext {
    std::string source;     ///< input path or target name ("sigmoid", "erf")
    std::string attribute;  ///< data column, empty for analytic targets
    std::string group;      ///< species/class, empty for analytic targets
    std::string strategy;   ///< "slope-midpoint" or "mode-frequency"
    std::size_t n = 1;
    double interval_lo = 0.0;
    double interval_hi = 0.0;
};

/// One fit as stored on disk: the report plus its provenance and the exact
/// configuration that produced it.
struct SerializedFit {
    FitReport report;
    FitContext context;
    FitConfig config;
};

nlohmann::json to_json(const FitConfig& config);
nlohmann::json to_json(const FitContext& context);
nlohmann::json to_json(const MeasureSet& measures);
nlohmann::json to_json(const FitReport& report, const FitContext& context,
                       const FitConfig& config);

FitConfig config_from_json(const nlohmann::json& j);
FitContext context_from_json(const nlohmann::json& j);
MeasureSet measures_from_json(const nlohmann::json& j);
/// Inverse of to_json(report, context, config): doubles round-trip bit-exactly.
SerializedFit report_from_json(const nlohmann::json& j);

}  // namespace samcurve
