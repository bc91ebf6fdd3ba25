#pragma once

#include <complex>

namespace dbarrier {

using cplx = std::complex<double>;

enum class ModelKind { KoBoL, Gaussian };

// Characteristic exponent parameters.  E[exp(i xi X_t)] = exp(-t psi(xi)).
//
// KoBoL: psi(xi) = -i mu xi + sum over the two sides of
//   c_+ Gamma(-nu_+) [ (-lambda_-)^nu_+ - (-lambda_- - i xi)^nu_+ ]
//   c_- Gamma(-nu_-) [ lambda_+^nu_- - (lambda_+ + i xi)^nu_- ]
// Gaussian: psi(xi) = sigma^2 xi^2 / 2 - i mu xi (test model only).
struct LevyModel {
    ModelKind kind = ModelKind::KoBoL;
    double nu_plus = 1.2;
    double nu_minus = 1.2;
    double lambda_plus = 1.0;
    double lambda_minus = -2.0;
    double c_plus = 0.0;
    double c_minus = 0.0;
    double mu = 0.0;
    double sigma = 0.0;
    // Finite stand-in for the (infinite) strip of analyticity of the
    // Gaussian model, used by contour placement.
    double gaussian_strip = 4.0;

    static LevyModel kobol(double nu, double lambda_plus, double lambda_minus, double c, double mu = 0.0);
    static LevyModel kobol_asymmetric(double nu_plus, double nu_minus, double lambda_plus,
                                      double lambda_minus, double c_plus, double c_minus,
                                      double mu = 0.0);
    // Symmetric KoBoL with c chosen so that psi''(0) = m2.
    static LevyModel kobol_from_m2(double nu, double lambda_plus, double lambda_minus, double m2,
                                   double mu = 0.0);
    static LevyModel gaussian(double sigma, double mu = 0.0);

    // Order of the process: max(nu_+, nu_-) for KoBoL, 2 for the Gaussian model.
    double order() const;
    bool symmetric() const;

    // Throws ValidationError when a field violates the model invariants.
    void validate() const;
};

struct AnalyticityInfo {
    double mu_minus;
    double mu_plus;
    double gamma_minus;
    double gamma_plus;
    double gamma_prime_minus;
    double gamma_prime_plus;
    double nu;
};

// psi including the drift term; throws DomainError on the cuts
// i(-inf, lambda_-) and i(lambda_+, +inf).
cplx psi(const LevyModel& model, cplx xi);
// psi without the drift term.
cplx psi0(const LevyModel& model, cplx xi);

double calibrate_c(double nu, double lambda_plus, double lambda_minus, double m2);

// psi(-i); zero for a risk-neutral model with r = 0.
double riskfree_residual(const LevyModel& model);

AnalyticityInfo analyticity(const LevyModel& model);

// Leading coefficient of psi0(rho e^{i phi}) ~ c_inf(phi) rho^nu as rho -> inf
// for the symmetric KoBoL model (sigma^2/2 e^{2 i phi} for the Gaussian model).
cplx c_infinity(const LevyModel& model, double phi);

// Exponent of -X: psi_mirror(xi) = psi(-xi).
LevyModel mirrored(const LevyModel& model);

} // namespace dbarrier
