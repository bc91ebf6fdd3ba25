#pragma once

#include "dbarrier/levy.hpp"

namespace dbarrier {

// r = 0 throughout; x is the log-spot, a the log-strike.

// E[1{x + X_T <= a}]
double euro_digital(const LevyModel& model, double a, double T, double x, double eps = 1e-15);
// E[(e^{x + X_T} - e^a)_+]; needs lambda_minus < -1.
double euro_call(const LevyModel& model, double a, double T, double x, double eps = 1e-15);
// The no-touch European part.
double euro_constant(double T, double x);

} // namespace dbarrier
