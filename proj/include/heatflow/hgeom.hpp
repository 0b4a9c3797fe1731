#pragma once

#include <functional>
#include <vector>

#include "heatflow/logval.hpp"
#include "heatflow/quadrature.hpp"
#include "heatflow/rootsys.hpp"

namespace heatflow {

// Point of H^n in polar coordinates: x0 = cosh r, (x1..xn) = sinh(r) omega.
struct HPoint {
    int n = 3;
    double r = 0;
    Vec omega;

    HPoint() = default;
    HPoint(int n, double r, Vec omega);
    static HPoint origin(int n);
    // Point at distance r in the direction making angle theta with the axis e1,
    // inside the (e1, e2) plane.
    static HPoint axial(int n, double r, double theta);

    Vec embedding() const; // hyperboloid coordinates (n+1 entries)
};

// Everything lives in the plane spanned by e1 and e2; angles are measured from e1.
struct AxialConfig {
    int n = 3;
    Vec axis() const;
    bool admits(const HPoint &p) const;
};

double distance(const HPoint &a, const HPoint &b);
// Distance between (r, omega) and (s, omega') with omega.omega' = cosang.
double distance_polar(double r, double s, double cosang);
// Same, forcing one branch (used to test the branches agree).
double distance_polar_direct(double r, double s, double cosang);
double distance_polar_log(double r, double s, double cosang);

// log(cosh s - sinh s * cosang), accurate for all s >= 0. The three-argument
// form takes 1 - cosang separately, which keeps full relative accuracy near cosang = 1.
double log_poisson_base(double s, double cosang);
double log_poisson_base(double s, double cosang, double one_minus_cosang);
// (cosh s - sinh s * cosang)^{-q}
LogVal poisson_power(double s, double cosang, double q);
LogVal poisson_power(double s, double cosang, double one_minus_cosang, double q);

// (d(Omega, center) - r) - log(cosh s - sinh s omega.omega_c), Omega = (r, omega).
double busemann_defect(double r, const Vec &omega, const HPoint &center);

// Area of the unit sphere S^{n-1}.
double sphere_area(int n);
// Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)).
double sphere_reduce_norm(int n);

struct SphereOptions {
    QuadOptions quad{1e-10, 0.0, 16, 2000, true};
    std::vector<double> theta_breaks; // extra panel boundaries in (0, pi)
};

// Normalized average of f(omega.theta) over S^{n-1}; f takes cos(theta).
double sphere_reduce(int n, const std::function<double(double)> &f, const SphereOptions &opt = {});
// f(cos theta, 1 - cos theta), for integrands sensitive near theta = 0.
double sphere_reduce2(int n, const std::function<double(double, double)> &f, const SphereOptions &opt = {});
LogVal sphere_reduce_log(int n, const std::function<LogVal(double)> &f, const SphereOptions &opt = {});

// Integral over H^n of f(r, cos theta) d vol, for an integrand that is
// axially symmetric about e1. The radial axis is split at r_breaks.
LogVal volume_integral(int n, const std::function<LogVal(double, double)> &f, const std::vector<double> &r_breaks,
                       const QuadOptions &radial = {}, const SphereOptions &angular = {});

// Same integral for f(r, cos theta, theta); theta_breaks(r), when set,
// supplies extra angular panel boundaries at radius r.
LogVal volume_integral_axial(int n, const std::function<LogVal(double, double, double)> &f,
                             const std::vector<double> &r_breaks,
                             const std::function<std::vector<double>(double)> &theta_breaks = {},
                             const QuadOptions &radial = {}, const SphereOptions &angular = {});

} // namespace heatflow
