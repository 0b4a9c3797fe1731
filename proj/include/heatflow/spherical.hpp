#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "heatflow/logval.hpp"
#include "heatflow/plancherel.hpp"
#include "heatflow/quadrature.hpp"

namespace heatflow {

// A radial (bi-K-invariant) function r -> f(r).
struct RadialProfile {
    std::function<double(double)> eval;
    double support_radius = 0;    // +inf for non-compact profiles
    double effective_radius = 0;  // beyond this the profile is negligible against e^{(n-1)r} weights
    std::vector<double> breaks;   // panel hints
    std::string smoothness = "smooth";

    double operator()(double r) const { return r > support_radius ? 0.0 : eval(r); }
    double integration_radius() const { return std::isfinite(support_radius) ? support_radius : effective_radius; }
    std::vector<double> radial_breaks() const;
};

// C^infinity bump of the given radius with unit mass in H^n:
// profile proportional to exp(-1/(1 - (r/a)^2)) on r < a.
RadialProfile smooth_bump(int n, double radius);

// Complex number stored as mantissa * exp(log_scale).
struct ScaledComplex {
    cplx mantissa;
    double log_scale = 0;
    cplx value() const { return mantissa * std::exp(log_scale); }
};

// phi_lambda(r) on H^n from the integral over the sphere, evaluated in the
// variable l = log(cosh r + sinh r cos theta).
ScaledComplex phi_lambda(int n, cplx lambda, double r);
double phi_lambda_real(int n, cplx lambda, double r);
LogVal phi0(int n, double r);

// Spherical transform with the total-measure convention |S^{n-1}| int f phi_lambda sinh^{n-1}.
cplx spherical_transform(int n, const RadialProfile &f, cplx lambda, const QuadOptions &opt = {1e-11, 0, 16, 2000, true});

// Plancherel density |c(lambda)|^{-2} of H^n (m_2alpha = 0).
double plancherel_density_h(int n, double lambda);

// kappa with C_n = kappa 2^{n-1}/|S^{n-1}|, fitted once to the exact H^3 kernel at (t,r) = (1,1).
double calibrated_kappa();
double spectral_constant(int n);

struct InverseOptions {
    double rel_tol = 1e-10;
    double lambda_max = 0; // 0: extend the domain until the tail is negligible
};

// C_n int_0^inf |c(lambda)|^{-2} phi_lambda(r) F(lambda) d lambda.
double inverse_transform_radial(int n, const std::function<double(double)> &F, double r,
                                const InverseOptions &opt = {});

} // namespace heatflow
