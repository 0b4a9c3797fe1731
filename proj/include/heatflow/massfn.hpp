#pragma once

#include <memory>
#include <string>
#include <vector>

#include "heatflow/chebtable.hpp"
#include "heatflow/hgeom.hpp"
#include "heatflow/spherical.hpp"

namespace heatflow {

enum class ComponentKind { RadialBump, DisplacedBump, DisplacedHeat };
std::string kind_name(ComponentKind k);

// One term of an initial datum: weight * profile(d(x, center)). Centers lie
// on the e1 axis, so every datum is axially symmetric about e1.
struct DatumComponent {
    ComponentKind kind = ComponentKind::RadialBump;
    double weight = 1;
    double radius = 0;    // bump support
    double s = 0;         // heat time
    double dist = 0;      // distance of the center from the origin
    int side = 1;         // +1: center on +e1, -1: on -e1
    RadialProfile profile;

    HPoint center(int n) const;
    // Component value at (r, omega) with omega.e1 = cosang.
    double operator()(double r, double cosang) const;
    // Spherical transform of the profile (about its own center).
    cplx transform(int n, cplx lambda) const;
    // Radius beyond which the profile is treated as zero.
    double truncation_radius() const { return profile.integration_radius(); }
};

class InitialDatum {
  public:
    explicit InitialDatum(int n = 3);

    InitialDatum &radial_bump(double radius, double weight = 1);
    InitialDatum &displaced_bump(double radius, const HPoint &center, double weight = 1);
    InitialDatum &displaced_heat(double s, const HPoint &center, double weight = 1);

    int n() const { return n_; }
    const std::vector<DatumComponent> &components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    bool is_radial() const;

    double operator()(double r, double cosang) const;
    double value(const HPoint &x) const;
    // Integral of u0 (sum of weighted profile masses).
    double total_mass() const;
    // Largest |x| where u0 can be nonzero, and radial panel boundaries up to it.
    double outer_radius() const;
    std::vector<double> radial_breaks() const;
    // Angles from e1 worth splitting the angular integral at, at radius r
    // (support edges of displaced bumps, graded shells around heat centers).
    std::vector<double> theta_breaks(double r) const;

  private:
    int n_;
    std::vector<DatumComponent> comps_;
    void add(DatumComponent c, const HPoint &center);
};

// Exponent a in w_p(x) = e^{a |x|}.
double weight_exponent(int n, double p);
// Integral of |u0| w_p over H^n.
double weight_norm(const InitialDatum &u0, double p);

// Boundary direction omega given by its cosine with e1 (the datum's axis);
// the masses only depend on omega through that cosine.
double mass_low(const InitialDatum &u0, double p, double cosang);
double mass_low(const InitialDatum &u0, double p, const Vec &omega);
// Literal Poisson-power integral of u0, for omega at angle acos(cosang) to e1.
// Used as an oracle for mass_low; rel_tol drives every nested quadrature.
double mass_low_quadrature(const InitialDatum &u0, double p, double cosang, double rel_tol = 1e-9);

double mass_high(const InitialDatum &u0, double p, const HPoint &x);
// (u0 * phi_0)(x) / phi_0(x) by quadrature, x in the (e1, e2) plane.
double mass_high_quadrature(const InitialDatum &u0, const HPoint &x, double rel_tol = 1e-9);

double mass_alt2(const InitialDatum &u0, double cosang);

// M_p + integral of u0(y) phi_{i(2/p-1)rho}(y) / (1 + d(x,y)^s_exp); u0 radial.
double mass_family_s(const InitialDatum &u0, double p, double s_exp, const HPoint &x);
// The same integral with the weight (2 + d^s)/(1 + d^s) taken in one piece.
double mass_family_s_direct(const InitialDatum &u0, double p, double s_exp, const HPoint &x);

enum class MassRegime { Low, High, Alt2, FamilyS, Constant, Zero };

struct MassChoice {
    MassRegime regime = MassRegime::Low;
    double s_exp = 2;  // FamilyS
    double value = 0;  // Constant

    // low for p < 2, high for p >= 2.
    static MassChoice default_for(double p);
    // "low", "high", "alt2", "family_s:<s>", "constant:<v>", "zero", "default".
    static MassChoice parse(const std::string &s, double p);
    std::string label() const;
};

// Mass function of a fixed datum, p and regime, with the spectral data
// precomputed. Evaluation at (r, omega) with omega.e1 = cosang.
class MassFunction {
  public:
    // r_max: largest |x| at which family_s corrections will be tabulated.
    MassFunction(const InitialDatum &u0, double p, MassChoice choice, double r_max = 64);

    double at(double r, double cosang) const;
    double operator()(const HPoint &x) const;

    double p() const { return p_; }
    const MassChoice &choice() const { return choice_; }
    double weight_norm() const { return weight_norm_; }

  private:
    InitialDatum u0_;
    double p_;
    MassChoice choice_;
    double weight_norm_ = 0;
    double q_ = 0;                 // Poisson power (Low, Alt2)
    std::vector<double> coef_;     // weight * transform per component
    double constant_ = 0;          // M_p for FamilyS
    std::shared_ptr<ChebTable> log_phi0_;
    std::shared_ptr<ChebTable> correction_;
};

} // namespace heatflow
