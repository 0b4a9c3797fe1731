#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "heatflow/chebtable.hpp"
#include "heatflow/heatkernel.hpp"
#include "heatflow/massfn.hpp"
#include "heatflow/schedule.hpp"

namespace heatflow {

enum class BumpRoute { Auto, Reduced1D, Quadrature2D };

// u(t, .) = h_t * u0. Each datum component is radial about its center, so it
// evolves into a radial function of d(x, center): heat components by the
// semigroup law, bumps by quadrature (a 1-D Gaussian integral in H^3, a 2-D
// axial integral otherwise), tabulated in log form up to d_max.
class HeatSolution {
  public:
    HeatSolution(const InitialDatum &u0, double t, double d_max, BumpRoute route = BumpRoute::Auto);

    double t() const { return t_; }
    int n() const { return u0_.n(); }
    LogVal at(double r, double cosang) const;
    LogVal operator()(const HPoint &x) const;
    // log of the evolved profile of component k at distance d from its center.
    double component_log(std::size_t k, double d) const;

  private:
    InitialDatum u0_;
    double t_;
    std::vector<std::shared_ptr<HeatKernel>> heat_;
    std::vector<std::shared_ptr<ChebTable>> bump_;
    BumpRoute route_;
};

LogVal solve(const InitialDatum &u0, double t, const HPoint &x, BumpRoute route = BumpRoute::Auto);
// Evolved bump profile at distance d from its center, computed directly.
LogVal bump_solution_1d(const RadialProfile &b, double t, double d);
LogVal bump_solution_2d(int n, const RadialProfile &b, const HeatKernel &h, double d);

struct ErrorOptions {
    QuadOptions radial{1e-7, 0, 16, 4000, true};
    SphereOptions angular{QuadOptions{1e-9, 0, 16, 2000, true}, {}};
    // p = inf grid: initial radial x angular points, refinement levels and factor
    int sup_radial = 240;
    int sup_angular = 33;
    int sup_levels = 3;
    int sup_factor = 4;
    BumpRoute bump_route = BumpRoute::Auto;
};

struct ErrorResult {
    double E = 0;
    // p < inf: the region and tail parts of E^p; p = inf: the sup over each part.
    double region = 0;
    double tail = 0;
    double log_error = -std::numeric_limits<double>::infinity(); // relative, of E^p
    long flagged = 0;   // integrand samples whose difference lost more than 12 digits
    double r_end = 0;   // radial truncation of the norm integrals
    RadialRegion crit;
};

// E_p(t) = ||u(t) - M h_t||_p / ||h_t||_p for a prebuilt solution and mass.
ErrorResult normalized_error(const HeatSolution &u, const MassFunction &M, double p, const RegionSchedule &sched,
                             const ErrorOptions &opt = {});
// Radius up to which the norm integrals run for (n, p, t).
double error_radius(int n, double p, double t, const RegionSchedule &sched);

struct ExperimentSpec {
    InitialDatum datum{3};
    std::vector<double> p_list;
    std::vector<double> t_grid;
    RegionSchedule sched = RegionSchedule::defaults();
    std::map<double, std::vector<MassChoice>> masses; // per p; missing p uses the default choice
    ErrorOptions options;

    std::vector<MassChoice> masses_for(double p) const;
    void validate() const;
};

double normalized_error(const ExperimentSpec &spec, double p, double t, const MassChoice &mass);

struct ReportRow {
    double p = 0, t = 0;
    std::string mass;
    ErrorResult result;
    double weight_norm = 0;
    std::string error; // non-empty if this cell failed
};

struct ConvergenceReport {
    int n = 3;
    std::vector<ReportRow> rows;
    std::vector<double> truncation_radii; // per datum component
};

ConvergenceReport convergence_experiment(const ExperimentSpec &spec);

struct GapResult {
    double E_const = 0;
    double E_mass = 0;
    double ratio() const { return E_const / E_mass; }
};
// p = 1 errors with the constant mass int u0 and with the direction-dependent mass.
GapResult counterexample_gap(const InitialDatum &u0, double t, const RegionSchedule &sched = RegionSchedule::defaults(),
                             const ErrorOptions &opt = {});

} // namespace heatflow
