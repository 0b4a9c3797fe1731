#pragma once

#include <complex>
#include <vector>

#include "heatflow/logval.hpp"
#include "heatflow/rootsys.hpp"

namespace heatflow {

using cplx = std::complex<double>;

// Gamma function on the complex plane (Lanczos, g = 607/128, with
// reflection for Re z < 1/2). Throws PoleError at nonpositive integers.
cplx complex_gamma(cplx z);
// A logarithm of Gamma(z); the imaginary part is correct modulo 2*pi.
cplx complex_lgamma(cplx z);

// The Gindikin-Karpelevic factor c_alpha(z). rho_ratio is <alpha,rho>/<alpha,alpha>;
// the three-argument form uses the rank-one value (m_a + 2 m_2a)/2.
cplx c_alpha(cplx z, int m_a, int m_2a, double rho_ratio);
cplx c_alpha(cplx z, int m_a, int m_2a);
// log c_alpha(z), avoiding overflow for large |z|.
cplx log_c_alpha(cplx z, int m_a, int m_2a, double rho_ratio);

// log |c(lambda)|^{-2} for real lambda; -inf where the density vanishes.
LogVal plancherel_density_log(const RootDatum &d, const Vec &lambda);

struct PhaseLog {
    cplx phase;     // unit modulus
    double log_mag; // log |value|
    cplx value() const { return phase * std::exp(log_mag); }
};

// b(-lambda)^{-1} with b(lambda) = pi(i lambda) c(lambda). Requires Im lambda
// in the closed positive chamber.
PhaseLog b_inverse_log(const RootDatum &d, const std::vector<cplx> &lambda);

// max over w in [x_plus - y_dist, x_plus + y_dist] of
// |b(-i w/2t)^{-1} / b(-i x_plus/2t)^{-1} - 1| (rank one).
double b_ratio_defect(const RootDatum &d, double x_plus, double y_dist, double t, int samples = 65);

} // namespace heatflow
