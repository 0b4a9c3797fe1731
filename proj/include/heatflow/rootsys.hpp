#pragma once

#include <string>
#include <utility>
#include <vector>

#include "heatflow/logval.hpp"
#include "heatflow/schedule.hpp"

namespace heatflow {

using Vec = std::vector<double>;

double dot(const Vec &a, const Vec &b);
double norm(const Vec &a);

enum class Family { Rank1, A2, B2 };

struct FamilySpec {
    Family family = Family::Rank1;
    int n = 3;       // rank1: dimension of H^n
    int m2a = 0;     // rank1: multiplicity of 2*alpha (spectral only)
    int m = 1;       // A2: common multiplicity
    int m_short = 1; // B2
    int m_long = 1;  // B2

    static FamilySpec rank1(int n) { return FamilySpec{Family::Rank1, n}; }
    static FamilySpec a2(int m = 1) { return FamilySpec{Family::A2, 0, 0, m}; }
    static FamilySpec b2(int m_short = 1, int m_long = 1) {
        return FamilySpec{Family::B2, 0, 0, 1, m_short, m_long};
    }
};

struct RootDatum {
    std::string family;
    int rank = 0;
    std::vector<Vec> positive_roots; // all of Sigma^+, including 2*alpha when m_2alpha > 0
    std::vector<int> positive_mult;  // m for each entry of positive_roots
    std::vector<Vec> reduced_positive;
    std::vector<std::pair<int, int>> reduced_mult; // (m_alpha, m_2alpha) per reduced root
    std::vector<Vec> simple_roots;
    Vec rho;  // half sum of Sigma^+ with multiplicities
    Vec rho0; // half sum of reduced roots
    int n = 0;
    int nu = 0;
};

RootDatum build_root_system(const FamilySpec &spec);

// H together with the quantities the region predicates need.
struct ChamberVector {
    Vec H;
    double mu = 0;
    double pi = 0;
    double rho_dot = 0;
    double angle_with_rho = 0;

    ChamberVector(const RootDatum &d, Vec H);
};

double mu(const RootDatum &d, const ChamberVector &H);
double pi_poly(const RootDatum &d, const Vec &H);
double rho_min(const RootDatum &d);
LogVal density_delta_log(const RootDatum &d, const ChamberVector &H);
bool box_membership(const RootDatum &d, double p, double t, const RegionSchedule &sched, const ChamberVector &H);

// Reflection of H through the wall of the i-th simple root.
Vec simple_reflection(const RootDatum &d, int i, const Vec &H);

std::string to_json(const RootDatum &d);

} // namespace heatflow
