#include "samcurve/report_io.hpp"

#include <nlohmann/json.hpp>

namespace samcurve {

using nlohmann::json;

namespace {

const char* init_mode_name(InitMode mode) {
    return mode == InitMode::SlopeAtInflection ? "slope-at-inflection" : "constant";
}

InitMode init_mode_from_name(const std::string& name) {
    if (name == "constant") return InitMode::Constant;
    if (name == "slope-at-inflection") return InitMode::SlopeAtInflection;
    throw std::invalid_argument("unknown init mode '" + name + "'");
}

}  // namespace

json to_json(const FitConfig& config) {
    return json{
        {"n", config.n},
        {"init_a", config.init_a},
        {"init_m", config.init_m},
        {"init_p", config.init_p},
        {"init_mode", init_mode_name(config.init_mode)},
        {"a_lower_bound", config.a_lower_bound},
        {"max_iterations", config.max_iterations},
        {"sse_rel_tol", config.sse_rel_tol},
        {"gradient_tol", config.gradient_tol},
    };
}

FitConfig config_from_json(const json& j) {
    FitConfig config;
    config.n = j.at("n").get<std::size_t>();
    config.init_a = j.at("init_a").get<double>();
    config.init_m = j.at("init_m").get<std::vector<double>>();
    config.init_p = j.at("init_p").get<std::vector<double>>();
    config.init_mode = init_mode_from_name(j.at("init_mode").get<std::string>());
    config.a_lower_bound = j.at("a_lower_bound").get<double>();
    config.max_iterations = j.at("max_iterations").get<std::size_t>();
    config.sse_rel_tol = j.at("sse_rel_tol").get<double>();
    config.gradient_tol = j.at("gradient_tol").get<double>();
    return config;
}

json to_json(const FitContext& context) {
    return json{
        {"source", context.source},
        {"attribute", context.attribute},
        {"group", context.group},
        {"strategy", context.strategy},
        {"n", context.n},
        {"interval", {context.interval_lo, context.interval_hi}},
    };
}

FitContext context_from_json(const json& j) {
    FitContext context;
    context.source = j.at("source").get<std::string>();
    context.attribute = j.at("attribute").get<std::string>();
    context.group = j.at("group").get<std::string>();
    context.strategy = j.at("strategy").get<std::string>();
    context.n = j.at("n").get<std::size_t>();
    context.interval_lo = j.at("interval")[0].get<double>();
    context.interval_hi = j.at("interval")[1].get<double>();
    return context;
}

json to_json(const MeasureSet& measures) {
    json j{
        {"m_max", measures.m_max},
        {"argmax_x", measures.argmax_x},
        {"ratio", measures.ratio},
        {"nl_percent", measures.nl_percent},
    };
    if (measures.m_bar) {
        j["m_bar"] = *measures.m_bar;
    } else {
        j["m_bar"] = nullptr;
    }
    return j;
}

MeasureSet measures_from_json(const json& j) {
    MeasureSet measures;
    measures.m_max = j.at("m_max").get<double>();
    measures.argmax_x = j.at("argmax_x").get<double>();
    measures.ratio = j.at("ratio").get<double>();
    measures.nl_percent = j.at("nl_percent").get<double>();
    if (!j.at("m_bar").is_null()) measures.m_bar = j.at("m_bar").get<double>();
    return measures;
}

json to_json(const FitReport& report, const FitContext& context,
             const FitConfig& config) {
    json components = json::array();
    for (const Component& c : report.params.components()) {
        components.push_back(json{
            {"p", c.weight},
            {"m", c.slope},
            {"x_c", c.x_c},
            {"y_c", c.y_c},
        });
    }
    return json{
        {"context", to_json(context)},
        {"config", to_json(config)},
        {"params", {{"a", report.params.a()}, {"components", components}}},
        {"sse", report.sse},
        {"initial_sse", report.initial_sse},
        {"iterations", report.iterations},
        {"converged", report.converged},
        {"measures", to_json(report.measures)},
    };
}

SerializedFit report_from_json(const json& j) {
    const json& params = j.at("params");
    std::vector<Component> components;
    for (const json& c : params.at("components")) {
        components.push_back(Component{
            c.at("p").get<double>(),
            c.at("m").get<double>(),
            c.at("x_c").get<double>(),
            c.at("y_c").get<double>(),
        });
    }
    FitReport report{
        Superposition(params.at("a").get<double>(), std::move(components)),
        j.at("sse").get<double>(),
        j.at("initial_sse").get<double>(),
        j.at("iterations").get<std::size_t>(),
        j.at("converged").get<bool>(),
        measures_from_json(j.at("measures")),
    };
    return {std::move(report), context_from_json(j.at("context")),
            config_from_json(j.at("config"))};
}

}  // namespace samcurve
