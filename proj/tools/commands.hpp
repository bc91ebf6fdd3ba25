#pragma once

#include "config.hpp"

#include <ostream>
#include <string>

namespace dbarrier::cli {

// Settings of the table command (the model and payoff come from the table).
struct TableOptions {
    Method method = Method::SinhLaplace;
    double tolerance = 1e-15;
    bool dual_run = false;
    unsigned threads = 0;
};

void cmd_price(const RunConfig& config, std::ostream& out, bool timing);
void cmd_table(const std::string& name, const TableOptions& options, std::ostream& out, bool timing);
void cmd_curve(const RunConfig& config, std::ostream& out);
// Returns true when every suite passes.
bool cmd_selftest(std::ostream& out, double step_factor);

} // namespace dbarrier::cli
