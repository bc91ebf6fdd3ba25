#pragma once

#include "dbarrier/pricing.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace dbarrier::cli {

struct RunConfig {
    LevyModel model;
    PayoffSpec payoff;
    std::vector<double> Ts;
    std::vector<double> xs;
    Method method = Method::Auto;
    double tolerance = 1e-15;
    bool dual_run = false;
    // 0 selects every logical core.
    unsigned threads = 0;
    std::optional<SeriesBlock> block;
    int M0 = 9;
    int gwr_M = 8;
    // Curve resolution (interior points).
    int points = 0;
    bool normalize = false;
};

// Parses and validates a config document; unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

PriceRequest make_request(const RunConfig& config, double T);

SeriesBlock parse_block(const std::string& name);

} // namespace dbarrier::cli
