#include "polaron/model.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "polaron/errors.hpp"

namespace polaron {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ModelSpec::omega(double k) const {
    switch (dispersion) {
        case Dispersion::Constant: return 1.0;
        case Dispersion::Massless: return k;
        case Dispersion::Massive: return std::sqrt(k * k + mass * mass);
    }
    return 1.0;
}

double ModelSpec::coupling_sq(double k) const {
    double v2 = g * g * std::pow(k, -2.0 * beta);
    if (cutoff == Cutoff::Gaussian)
        v2 *= std::exp(-k * k / (cutoff_lambda * cutoff_lambda));
    return v2;
}

void ModelSpec::validate() const {
    if (d < 1) throw ConfigError("model: dimension must be >= 1");
    if (beta < 0.0) throw ConfigError("model: coupling_beta must be >= 0");
    if (dispersion == Dispersion::Massive && mass < 0.0)
        throw ConfigError("model: mass must be >= 0");
    if (cutoff == Cutoff::Gaussian && cutoff_lambda <= 0.0)
        throw ConfigError("model: cutoff_lambda must be > 0");
}

std::string ModelSpec::describe() const {
    std::string s = "d=" + std::to_string(d);
    s += dispersion == Dispersion::Constant ? " omega=1"
         : dispersion == Dispersion::Massless ? " omega=|k|"
                                              : " omega=sqrt(k^2+m^2)";
    s += " g=" + std::to_string(g) + " beta=" + std::to_string(beta);
    if (cutoff == Cutoff::Gaussian) s += " gaussian_cutoff";
    return s;
}

double GaussianMixture::eval(double u) const {
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i)
        s += weights[i] * std::exp(-rates[i] * u);
    return s;
}

double sphere_area(int d) {
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

namespace {

// Upper incomplete gamma for any real a and x > 0 (boost requires a > 0;
// extend by Gamma(0,x) = E1(x) and the downward recurrence).
double upper_gamma(double a, double x) {
    if (a > 0.0) return boost::math::tgamma(a, x);
    if (a == 0.0) return boost::math::expint(1, x);
    return (upper_gamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

// int_lo^hi r^p dr (hi may be +inf), or with a Gaussian factor e^{-r^2/L^2}.
// Returns +inf on divergence.
double radial_power_integral(double p, double lo, double hi, Cutoff cutoff, double L) {
    const double inf = std::numeric_limits<double>::infinity();
    if (cutoff == Cutoff::None) {
        if (lo == 0.0 && p <= -1.0) return inf;
        if (std::isinf(hi) && p >= -1.0) return inf;
        if (p == -1.0) return std::log(hi / lo);
        double hi_part = std::isinf(hi) ? 0.0 : std::pow(hi, p + 1.0);
        double lo_part = (lo == 0.0) ? 0.0 : std::pow(lo, p + 1.0);
        return (hi_part - lo_part) / (p + 1.0);
    }
    // substitute w = r^2/L^2: int r^p e^{-r^2/L^2} dr
    //   = (L^{p+1}/2) * int w^{(p-1)/2} e^{-w} dw
    double a = 0.5 * (p + 1.0);
    if (lo == 0.0 && a <= 0.0) return inf;
    double wlo = (lo / L) * (lo / L);
    double whi = std::isinf(hi) ? inf : (hi / L) * (hi / L);
    double gi;
    if (lo == 0.0)
        gi = std::isinf(whi) ? std::tgamma(a) : boost::math::tgamma_lower(a, whi);
    else
        gi = upper_gamma(a, wlo) - (std::isinf(whi) ? 0.0 : upper_gamma(a, whi));
    return 0.5 * std::pow(L, p + 1.0) * gi;
}

// int_lo^hi r^p / omega(r) dr for the massive dispersion (no elementary form);
// adaptive tanh-sinh, with the tail mapped to a finite interval.
double radial_over_massive(const ModelSpec& m, double p, double lo, double hi) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        double w = m.cutoff == Cutoff::Gaussian
                       ? std::exp(-r * r / (m.cutoff_lambda * m.cutoff_lambda))
                       : 1.0;
        return std::pow(r, p) / m.omega(r) * w;
    };
    if (!std::isinf(hi)) return integrator.integrate(f, lo, hi);
    // r = lo/x maps (0,1] to [lo,inf); powers combined so the endpoint
    // evaluation cannot produce 0 * inf
    auto g = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double r = lo / x;
        const double power = std::pow(lo, p + 1.0) * std::pow(x, -p - 2.0);
        const double w = m.cutoff == Cutoff::Gaussian
                             ? std::exp(-r * r / (m.cutoff_lambda * m.cutoff_lambda))
                             : 1.0;
        const double omega = m.omega(r);
        return std::isfinite(omega) ? power * w / omega : 0.0;
    };
    return integrator.integrate(g, 0.0, 1.0);
}

}  // namespace

Assumption1Report check_assumption1(const ModelSpec& m, double R) {
    m.validate();
    if (R <= 0.0) throw ConfigError("check_assumption1: R must be > 0");
    Assumption1Report rep;
    if (m.g == 0.0) return rep;  // zero coupling: (0, 0, feasible)

    const double Sd = sphere_area(m.d);
    const double gg = m.g * m.g;
    const double L = m.cutoff_lambda;
    const double inf = std::numeric_limits<double>::infinity();

    // I1 = int_{|k|<=R} |v|^2/omega: radial exponent d-1-2beta, minus one more
    // power for the massless dispersion.
    {
        double val = 0.0;
        switch (m.dispersion) {
            case Dispersion::Constant:
                val = radial_power_integral(m.d - 1 - 2.0 * m.beta, 0.0, R, m.cutoff, L);
                break;
            case Dispersion::Massless:
                val = radial_power_integral(m.d - 2 - 2.0 * m.beta, 0.0, R, m.cutoff, L);
                break;
            case Dispersion::Massive:
                if (m.mass == 0.0) {
                    val = radial_power_integral(m.d - 2 - 2.0 * m.beta, 0.0, R, m.cutoff, L);
                } else if (m.d - 1 - 2.0 * m.beta <= -1.0) {
                    val = inf;  // omega(0) = m > 0, so the r->0 exponent decides
                } else {
                    val = radial_over_massive(m, m.d - 1 - 2.0 * m.beta, 0.0, R);
                }
                break;
        }
        rep.I1_finite = std::isfinite(val);
        rep.I1 = rep.I1_finite ? Sd * gg * val : inf;
    }

    // I2 = int_{|k|>R} |v|^2/|k|^2 (1 + 1/omega): base exponent d-3-2beta.
    {
        const double p = m.d - 3 - 2.0 * m.beta;
        double val = 0.0;
        switch (m.dispersion) {
            case Dispersion::Constant:
                val = 2.0 * radial_power_integral(p, R, inf, m.cutoff, L);
                break;
            case Dispersion::Massless:
                val = radial_power_integral(p, R, inf, m.cutoff, L) +
                      radial_power_integral(p - 1.0, R, inf, m.cutoff, L);
                break;
            case Dispersion::Massive:
                if (m.mass == 0.0) {
                    val = radial_power_integral(p, R, inf, m.cutoff, L) +
                          radial_power_integral(p - 1.0, R, inf, m.cutoff, L);
                } else {
                    double first = radial_power_integral(p, R, inf, m.cutoff, L);
                    val = std::isfinite(first)
                              ? first + radial_over_massive(m, p, R, inf)
                              : inf;
                }
                break;
        }
        rep.I2_finite = std::isfinite(val);
        rep.I2 = rep.I2_finite ? Sd * gg * val : inf;
    }

    rep.feasible = rep.I1_finite && rep.I2_finite;
    if (!rep.feasible) {
        rep.divergent = !rep.I1_finite && !rep.I2_finite ? "I1 and I2"
                        : !rep.I1_finite                 ? "I1"
                                                         : "I2";
    }
    return rep;
}

FormBoundReport lieb_yamazaki_constants(const ModelSpec& m, double R, double eps) {
    if (eps <= 0.0) throw ConfigError("lieb_yamazaki_constants: eps must be > 0");
    auto a1 = check_assumption1(m, R);
    if (!a1.feasible)
        throw IntegrabilityError("lieb_yamazaki_constants: model infeasible, divergent " +
                                 a1.divergent);

    FormBoundReport rep;
    rep.split_radius = R;
    rep.epsilon = eps;
    if (m.g == 0.0) {
        rep.lambda_rel = eps;
        return rep;
    }

    const double Sd = sphere_area(m.d);
    const double gg = m.g * m.g;
    const double inf = std::numeric_limits<double>::infinity();
    const double p = m.d - 3 - 2.0 * m.beta;

    // lambda = 4 int_{|k|>R} |v|^2/(|k|^2 omega)
    double lam = 0.0;
    switch (m.dispersion) {
        case Dispersion::Constant:
            lam = radial_power_integral(p, R, inf, m.cutoff, m.cutoff_lambda);
            break;
        case Dispersion::Massless:
            lam = radial_power_integral(p - 1.0, R, inf, m.cutoff, m.cutoff_lambda);
            break;
        case Dispersion::Massive:
            lam = m.mass == 0.0
                      ? radial_power_integral(p - 1.0, R, inf, m.cutoff, m.cutoff_lambda)
                      : radial_over_massive(m, p, R, inf);
            break;
    }
    rep.lambda = 4.0 * Sd * gg * lam;
    rep.lambda_rel = eps + rep.lambda / eps;

    // a = eps^{-1} (I1 + 2 int_{|k|>R} |v|^2/|k|^2)
    double tail = 2.0 * Sd * gg * radial_power_integral(p, R, inf, m.cutoff, m.cutoff_lambda);
    rep.shift = (a1.I1 + tail) / eps;
    return rep;
}

GaussianMixture coupling_mixture(const ModelSpec& m, int order) {
    m.validate();
    if (order < 1) throw ConfigError("coupling_mixture: quadrature_order must be >= 1");
    GaussianMixture mix;
    const double shift = m.cutoff == Cutoff::Gaussian
                             ? 1.0 / (m.cutoff_lambda * m.cutoff_lambda)
                             : 0.0;
    if (m.g == 0.0) return mix;  // empty mixture
    if (m.beta == 0.0) {
        mix.weights = {m.g * m.g};
        mix.rates = {shift};
        mix.exact = true;
        return mix;
    }
    // Gamma(beta) u^{-beta} = int e^{-u x} x^{beta-1} dx; substitute x = e^y
    // and apply the trapezoid rule on a window wide enough that the dropped
    // tails are below kTol relative to u^{-beta} over the design range
    // u in [kULo, kUHi] (left tail rate beta, right tail doubly exponential).
    constexpr double kTol = 1e-10;
    constexpr double kULo = 1e-12;
    constexpr double kUHi = 50.0;
    const double lg = std::lgamma(m.beta);
    const double y_lo =
        (std::log(kTol) + std::log(m.beta) + lg) / m.beta - std::log(kUHi);
    const double y_hi = std::log((std::log(1.0 / kTol) + 5.0) / kULo);
    if (order == 1) {
        mix.weights = {m.g * m.g};
        mix.rates = {shift + std::exp(0.5 * (y_lo + y_hi))};
        return mix;
    }
    const double h = (y_hi - y_lo) / (order - 1);
    mix.weights.reserve(static_cast<std::size_t>(order));
    mix.rates.reserve(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        double y = y_lo + h * i;
        double w = m.g * m.g * h * std::exp(m.beta * y - lg);
        if (i == 0 || i == order - 1) w *= 0.5;
        mix.weights.push_back(w);
        mix.rates.push_back(shift + std::exp(y));
    }
    return mix;
}

GaussianMixture dispersion_mixture(const ModelSpec& m, double s, int order) {
    m.validate();
    if (order < 1) throw ConfigError("dispersion_mixture: quadrature_order must be >= 1");
    if (s <= 0.0) throw ConfigError("dispersion_mixture: s must be > 0");
    GaussianMixture mix;
    if (m.dispersion == Dispersion::Constant) {
        mix.weights = {std::exp(-s)};
        mix.rates = {0.0};
        mix.exact = true;
        return mix;
    }
    // e^{-s sqrt(u + m^2)} = (s/2 sqrt(pi)) int tau^{-3/2}
    //     e^{-s^2/(4 tau)} e^{-tau m^2} e^{-tau u} dtau;  tau = e^y.
    const double m2 = m.dispersion == Dispersion::Massive ? m.mass * m.mass : 0.0;
    const double pref = s / (2.0 * std::sqrt(kPi));
    auto log_integrand = [&](double y) {
        double tau = std::exp(y);
        return -0.5 * y - s * s / (4.0 * tau) - tau * m2;
    };
    // peak location: d/dy = -1/2 + s^2/(4 tau) - tau m^2 = 0
    double y_peak = m2 > 0.0
                        ? std::log((std::sqrt(1.0 + 4.0 * m2 * s * s) - 1.0) / (4.0 * m2))
                        : std::log(s * s / 2.0);
    double peak = log_integrand(y_peak);
    constexpr double kLogTol = -27.6;  // ln(1e-12)
    double y_lo = y_peak, y_hi = y_peak;
    while (log_integrand(y_lo) - peak > kLogTol) y_lo -= 0.5;
    while (log_integrand(y_hi) - peak > kLogTol) y_hi += 0.5;
    if (order == 1) {
        mix.weights = {pref * std::exp(log_integrand(y_peak)) * (y_hi - y_lo)};
        mix.rates = {std::exp(y_peak)};
        return mix;
    }
    const double h = (y_hi - y_lo) / (order - 1);
    for (int i = 0; i < order; ++i) {
        double y = y_lo + h * i;
        double w = pref * h * std::exp(log_integrand(y));
        if (i == 0 || i == order - 1) w *= 0.5;
        mix.weights.push_back(w);
        mix.rates.push_back(std::exp(y));
    }
    return mix;
}

EssentialSpectrum::EssentialSpectrum(EnergyCurve curve, ModelSpec model)
    : curve_(std::move(curve)), model_(std::move(model)) {
    if (curve_.samples.size() < 3)
        throw WindowError("essential_spectrum: energy curve too sparse (need >= 3 samples)");
    min_e0_ = curve_.samples.front().E0;
    for (const auto& s : curve_.samples) min_e0_ = std::min(min_e0_, s.E0);
}

double EssentialSpectrum::operator()(double p_norm) const {
    if (model_.dispersion == Dispersion::Constant) return min_e0_ + 1.0;
    // n = 1 branch: min over sampled u' of E0(u') + omega(|p - sqrt(u')|);
    // for this dispersion family (omega increasing, superadditive over the
    // relevant momenta) the n = 1 branch attains the infimum.
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : curve_.samples) {
        double k = std::abs(p_norm - std::sqrt(s.u));
        best = std::min(best, s.E0 + model_.omega(k));
    }
    return best;
}

EssentialSpectrum essential_spectrum(const EnergyCurve& curve, const ModelSpec& m) {
    return EssentialSpectrum(curve, m);
}

}  // namespace polaron
