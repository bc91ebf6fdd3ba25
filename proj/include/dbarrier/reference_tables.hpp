#pragma once

#include "dbarrier/barrier_engine.hpp"
#include "dbarrier/pricing.hpp"

#include <array>
#include <string>
#include <vector>

namespace dbarrier {

struct ReferenceRow {
    double T;
    std::array<double, 5> values;
};

// Published benchmark prices for the KoBoL model with m2 = 0.1,
// lambda_+ = 1, lambda_- = -2, mu = 0 and barriers h = -0.05, 0.05.
struct ReferenceTable {
    std::string name;
    std::string description;
    double nu;
    PayoffKind kind;
    double a;
    std::array<double, 5> xs;
    std::vector<ReferenceRow> rows;
};

const std::vector<ReferenceTable>& reference_tables();
// Throws ValidationError for an unknown name.
const ReferenceTable& reference_table(const std::string& name);

LevyModel reference_model(double nu);
PayoffSpec reference_payoff(const ReferenceTable& table);
PriceRequest reference_request(const ReferenceTable& table, double T);

} // namespace dbarrier
