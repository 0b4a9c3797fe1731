#include "heatflow/plancherel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "heatflow/errors.hpp"

namespace heatflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

bool is_pole(cplx z) {
    if (z.imag() != 0 || z.real() > 0.5) return false;
    return z.real() == std::round(z.real());
}

// log Gamma(z) for Re z >= 1/2.
cplx lanczos_log(cplx z) {
    z -= 1.0;
    cplx a = kLanczos[0];
    for (int k = 1; k < 15; ++k) a += kLanczos[k] / (z + static_cast<double>(k));
    cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

// log sin(pi z) without overflow for large |Im z|.
cplx log_sin_pi(cplx z) {
    cplx w = kPi * z;
    const cplx I(0, 1);
    if (std::abs(z.imag()) < 1) return std::log(std::sin(w));
    if (z.imag() > 0) {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        return std::log(0.5) + I * (kPi / 2) - I * w + std::log(1.0 - std::exp(2.0 * I * w));
    }
    // sin w = (-i/2) e^{iw} (1 - e^{-2iw})
    return std::log(0.5) - I * (kPi / 2) + I * w + std::log(1.0 - std::exp(-2.0 * I * w));
}

} // namespace

cplx complex_lgamma(cplx z) {
    if (is_pole(z)) {
        std::ostringstream os;
        os << "Gamma pole at z = " << z.real();
        throw PoleError(os.str());
    }
    if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - lanczos_log(1.0 - z);
    return lanczos_log(z);
}

cplx complex_gamma(cplx z) {
    if (is_pole(z)) {
        std::ostringstream os;
        os << "Gamma pole at z = " << z.real();
        throw PoleError(os.str());
    }
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * std::exp(lanczos_log(1.0 - z)));
    return std::exp(lanczos_log(z));
}

cplx log_c_alpha(cplx z, int m_a, int m_2a, double rho_ratio) {
    const cplx I(0, 1);
    double a = rho_ratio, ma = m_a, m2 = m_2a;
    auto lg = [](cplx x) { return complex_lgamma(x); };
    cplx iz = I * z;
    cplx v = lg(a + ma / 2) - lg(a);
    v += lg(a / 2 + ma / 4 + m2 / 2) - lg(a / 2 + ma / 4);
    v += lg(iz) - lg(iz + ma / 2);
    v += lg(iz / 2.0 + ma / 4) - lg(iz / 2.0 + ma / 4 + m2 / 2);
    return v;
}

cplx c_alpha(cplx z, int m_a, int m_2a, double rho_ratio) { return std::exp(log_c_alpha(z, m_a, m_2a, rho_ratio)); }

cplx c_alpha(cplx z, int m_a, int m_2a) { return c_alpha(z, m_a, m_2a, 0.5 * (m_a + 2.0 * m_2a)); }

LogVal plancherel_density_log(const RootDatum &d, const Vec &lambda) {
    double s = 0;
    for (size_t k = 0; k < d.reduced_positive.size(); ++k) {
        const Vec &a = d.reduced_positive[k];
        double aa = dot(a, a);
        double z = dot(a, lambda) / aa;
        if (z == 0) return LogVal();
        auto [m, m2] = d.reduced_mult[k];
        s += -2 * log_c_alpha(cplx(z, 0), m, m2, dot(a, d.rho) / aa).real();
    }
    return LogVal::from_log(s);
}

PhaseLog b_inverse_log(const RootDatum &d, const std::vector<cplx> &lambda) {
    if (static_cast<int>(lambda.size()) != d.rank) throw ConfigError("spectral point has wrong dimension");
    Vec im(d.rank);
    for (int i = 0; i < d.rank; ++i) im[i] = lambda[i].imag();
    double scale = std::max(1.0, norm(im));
    for (const auto &a : d.simple_roots)
        if (dot(a, im) < -1e-12 * scale) throw DomainError("b(-lambda)^{-1}: Im lambda outside the closed chamber");
    const cplx I(0, 1);
    cplx acc = 0;
    for (size_t k = 0; k < d.reduced_positive.size(); ++k) {
        const Vec &a = d.reduced_positive[k];
        double aa = dot(a, a);
        double ar = dot(a, d.rho) / aa;
        auto [m, m2] = d.reduced_mult[k];
        // Factor of b(mu) at mu = -lambda: <alpha,mu> c_alpha(<alpha,mu>/<alpha,alpha>).
        // With z = <alpha,mu>/<alpha,alpha>, z Gamma(iz) = -i Gamma(iz + 1) keeps it regular at z = 0.
        cplx z = 0;
        for (int i = 0; i < d.rank; ++i) z -= a[i] * lambda[i];
        z /= aa;
        cplx iz = I * z;
        double ma = m, mb = m2;
        cplx f = std::log(aa) + std::log(-I);
        f += complex_lgamma(ar + ma / 2) - complex_lgamma(ar);
        f += complex_lgamma(ar / 2 + ma / 4 + mb / 2) - complex_lgamma(ar / 2 + ma / 4);
        f += complex_lgamma(iz + 1.0) - complex_lgamma(iz + ma / 2);
        f += complex_lgamma(iz / 2.0 + ma / 4) - complex_lgamma(iz / 2.0 + ma / 4 + mb / 2);
        acc -= f;
    }
    return PhaseLog{std::exp(cplx(0, acc.imag())), acc.real()};
}

double b_ratio_defect(const RootDatum &d, double x_plus, double y_dist, double t, int samples) {
    if (d.rank != 1) throw ConfigError("b_ratio_defect is defined for rank one");
    if (!(t > 0)) throw ConfigError("b_ratio_defect requires t > 0");
    if (y_dist < 0 || x_plus < 0) throw ConfigError("b_ratio_defect requires nonnegative distances");
    auto binv = [&](double w) { return b_inverse_log(d, {cplx(0, w / (2 * t))}); };
    PhaseLog ref = binv(x_plus);
    double worst = 0;
    for (int k = 0; k < samples; ++k) {
        double w = x_plus - y_dist + 2 * y_dist * k / std::max(1, samples - 1);
        w = std::max(w, 0.0);
        PhaseLog v = binv(w);
        cplx ratio = (v.phase / ref.phase) * std::exp(v.log_mag - ref.log_mag);
        worst = std::max(worst, std::abs(ratio - 1.0));
    }
    return worst;
}

} // namespace heatflow
