#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

#include "polaron/errors.hpp"
#include "polaron/model.hpp"

using namespace polaron;

namespace {

constexpr double kPi = 3.14159265358979323846;

ModelSpec frohlich(double alpha) {
    ModelSpec m;
    m.d = 3;
    m.dispersion = Dispersion::Constant;
    m.g = std::sqrt(alpha / (2.0 * kPi * kPi));
    m.beta = 1.0;
    return m;
}

// independent adaptive radial quadrature of I1 and I2, integrating the full
// integrand rather than the split closed forms used by the library
double cutoff_factor(const ModelSpec& m, double r) {
    return m.cutoff == Cutoff::Gaussian
               ? std::exp(-r * r / (m.cutoff_lambda * m.cutoff_lambda))
               : 1.0;
}

double quadrature_I1(const ModelSpec& m, double R) {
    boost::math::quadrature::tanh_sinh<double> integ;
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double power = std::pow(r, m.d - 1 - 2.0 * m.beta);
        return sphere_area(m.d) * m.g * m.g * power * cutoff_factor(m, r) / m.omega(r);
    };
    return integ.integrate(f, 0.0, R);
}

double quadrature_I2(const ModelSpec& m, double R) {
    boost::math::quadrature::tanh_sinh<double> integ;
    const double p = m.d - 3 - 2.0 * m.beta;
    auto f = [&](double x) {  // r = R/x maps (0,1] onto [R,inf)
        if (x <= 0.0) return 0.0;
        const double r = R / x;
        // r^p * R/x^2 = R^{p+1} x^{-p-2}, combined to avoid 0 * inf
        const double power = std::pow(R, p + 1.0) * std::pow(x, -p - 2.0);
        return sphere_area(m.d) * m.g * m.g * power * cutoff_factor(m, r) *
               (1.0 + 1.0 / m.omega(r));
    };
    return integ.integrate(f, 0.0, 1.0);
}

}  // namespace

TEST_CASE("check_assumption1: Frohlich closed forms") {
    const double alpha = 1.0;
    auto m = frohlich(alpha);
    for (double R : {0.5, 1.0, 2.0}) {
        auto rep = check_assumption1(m, R);
        CHECK(rep.feasible);
        CHECK(rep.I1 == doctest::Approx(2.0 * alpha * R / kPi).epsilon(1e-12));
        CHECK(rep.I1 == doctest::Approx(quadrature_I1(m, R)).epsilon(1e-8));
        CHECK(rep.I2 == doctest::Approx(quadrature_I2(m, R)).epsilon(1e-8));
    }
}

TEST_CASE("check_assumption1: zero coupling") {
    ModelSpec m;
    m.g = 0.0;
    auto rep = check_assumption1(m, 1.0);
    CHECK(rep.I1 == 0.0);
    CHECK(rep.I2 == 0.0);
    CHECK(rep.feasible);
}

TEST_CASE("check_assumption1: marginal exponents diverge") {
    // beta = d/2: I1's radial integrand is 1/r at r -> 0 (log divergence)
    ModelSpec m;
    m.d = 3;
    m.g = 1.0;
    m.beta = 1.5;
    auto rep = check_assumption1(m, 1.0);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.divergent == "I1");

    // beta = (d-2)/2: I2's radial integrand is 1/r at infinity
    m.beta = 0.5;
    rep = check_assumption1(m, 1.0);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.divergent == "I2");

    // a Gaussian cutoff rescues the large-k divergence but not the small-k one
    m.cutoff = Cutoff::Gaussian;
    m.cutoff_lambda = 2.0;
    rep = check_assumption1(m, 1.0);
    CHECK(rep.feasible);
    CHECK(rep.I2 == doctest::Approx(quadrature_I2(m, 1.0)).epsilon(1e-8));
    m.beta = 1.5;
    rep = check_assumption1(m, 1.0);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.divergent == "I1");
}

TEST_CASE("check_assumption1: massless and massive reduce to quadrature") {
    ModelSpec m;
    m.d = 3;
    m.g = 0.7;
    m.beta = 0.75;  // strictly inside ((d-2)/2, d/2)
    m.dispersion = Dispersion::Massless;
    auto rep = check_assumption1(m, 1.5);
    CHECK(rep.feasible);
    CHECK(rep.I1 == doctest::Approx(quadrature_I1(m, 1.5)).epsilon(1e-8));
    CHECK(rep.I2 == doctest::Approx(quadrature_I2(m, 1.5)).epsilon(1e-8));

    m.dispersion = Dispersion::Massive;
    m.mass = 0.8;
    rep = check_assumption1(m, 1.5);
    CHECK(rep.feasible);
    CHECK(rep.I1 == doctest::Approx(quadrature_I1(m, 1.5)).epsilon(1e-8));
    CHECK(rep.I2 == doctest::Approx(quadrature_I2(m, 1.5)).epsilon(1e-8));

    // the massless Nelson exponent sits exactly on the marginal line
    m.dispersion = Dispersion::Massless;
    m.beta = 0.5;
    m.cutoff = Cutoff::None;
    rep = check_assumption1(m, 1.5);
    CHECK_FALSE(rep.feasible);
    CHECK(rep.divergent == "I2");
    m.cutoff = Cutoff::Gaussian;
    m.cutoff_lambda = 2.0;
    rep = check_assumption1(m, 1.5);
    CHECK(rep.feasible);
    CHECK(rep.I2 == doctest::Approx(quadrature_I2(m, 1.5)).epsilon(1e-8));
}

TEST_CASE("lieb_yamazaki_constants: Frohlich lambda and R-scaling") {
    const double alpha = 1.0;
    auto m = frohlich(alpha);
    const double eps = 0.3;
    auto rep = lieb_yamazaki_constants(m, 1.0, eps);
    CHECK(rep.lambda == doctest::Approx(8.0 * alpha / kPi).epsilon(1e-12));
    CHECK(rep.lambda_rel == doctest::Approx(eps + rep.lambda / eps).epsilon(1e-12));
    CHECK(rep.shift > 0.0);

    auto rep2 = lieb_yamazaki_constants(m, 2.0, eps);
    CHECK(rep2.lambda == doctest::Approx(0.5 * rep.lambda).epsilon(1e-12));
}

TEST_CASE("lieb_yamazaki_constants: zero coupling") {
    ModelSpec m;
    m.g = 0.0;
    auto rep = lieb_yamazaki_constants(m, 1.0, 0.25);
    CHECK(rep.lambda_rel == doctest::Approx(0.25));
    CHECK(rep.shift == 0.0);
}

TEST_CASE("lieb_yamazaki_constants: infeasible model throws") {
    ModelSpec m;
    m.d = 3;
    m.g = 1.0;
    m.beta = 1.5;
    CHECK_THROWS_AS(lieb_yamazaki_constants(m, 1.0, 0.5), IntegrabilityError);
}

TEST_CASE("coupling_mixture: exact beta = 0 nodes") {
    ModelSpec m;
    m.g = 1.0;
    m.beta = 0.0;
    auto mix = coupling_mixture(m, 16);
    REQUIRE(mix.size() == 1);
    CHECK(mix.exact);
    CHECK(mix.weights[0] == 1.0);
    CHECK(mix.rates[0] == 0.0);

    m.cutoff = Cutoff::Gaussian;
    m.cutoff_lambda = 2.0;
    mix = coupling_mixture(m, 16);
    REQUIRE(mix.size() == 1);
    CHECK(mix.exact);
    CHECK(mix.rates[0] == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("coupling_mixture: beta = 1 reproduces u^-1") {
    ModelSpec m;
    m.g = 1.0;
    m.beta = 1.0;
    auto mix = coupling_mixture(m, 128);
    for (double w : mix.weights) CHECK(w > 0.0);
    CHECK(std::abs(mix.eval(1.0) - 1.0) < 1e-8);
    for (double u : {0.5, 2.0, 10.0})
        CHECK(std::abs(mix.eval(u) * u - 1.0) < 1e-7);
}

TEST_CASE("coupling_mixture: fractional beta with cutoff") {
    ModelSpec m;
    m.g = 0.8;
    m.beta = 0.75;
    m.cutoff = Cutoff::Gaussian;
    m.cutoff_lambda = 1.5;
    auto mix = coupling_mixture(m, 160);
    for (double u : {0.3, 1.0, 4.0}) {
        const double target = m.coupling_sq(std::sqrt(u));
        CHECK(mix.eval(u) == doctest::Approx(target).epsilon(1e-6));
    }
}

TEST_CASE("dispersion_mixture: constant is the exact single node") {
    ModelSpec m;
    auto mix = dispersion_mixture(m, 1.0, 16);
    REQUIRE(mix.size() == 1);
    CHECK(mix.exact);
    CHECK(mix.weights[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(mix.rates[0] == 0.0);
}

TEST_CASE("dispersion_mixture: massless and massive subordination") {
    ModelSpec m;
    m.dispersion = Dispersion::Massless;
    auto mix = dispersion_mixture(m, 1.0, 400);
    for (double w : mix.weights) CHECK(w > 0.0);
    CHECK(std::abs(mix.eval(1.0) - std::exp(-1.0)) < 1e-6);
    CHECK(std::abs(mix.eval(0.25) - std::exp(-0.5)) < 1e-6);

    m.dispersion = Dispersion::Massive;
    m.mass = 1.0;
    mix = dispersion_mixture(m, 2.0, 200);
    CHECK(std::abs(mix.eval(0.0) - std::exp(-2.0)) < 1e-6);
    CHECK(std::abs(mix.eval(1.0) - std::exp(-2.0 * std::sqrt(2.0))) < 1e-6);
}

TEST_CASE("essential_spectrum: constant dispersion is min E0 + 1") {
    EnergyCurve curve;
    for (int i = 0; i <= 6; ++i) {
        double u = 0.2 * i;
        curve.samples.push_back({u, -0.5 + 0.8 * u, 0.0});
    }
    ModelSpec m;
    auto ess = essential_spectrum(curve, m);
    CHECK(ess(0.0) == doctest::Approx(-0.5 + 1.0));
    CHECK(ess(2.0) == doctest::Approx(-0.5 + 1.0));
}

TEST_CASE("essential_spectrum: sparse curve rejected, term-wise lower bound") {
    EnergyCurve sparse;
    sparse.samples.push_back({0.0, 0.0, 0.0});
    ModelSpec m;
    CHECK_THROWS_AS(essential_spectrum(sparse, m), WindowError);

    EnergyCurve curve;
    double min_e0 = 1e300;
    for (int i = 0; i <= 8; ++i) {
        double u = 0.25 * i;
        double e0 = -0.3 + 0.9 * u - 0.05 * u * u;
        min_e0 = std::min(min_e0, e0);
        curve.samples.push_back({u, e0, 0.0});
    }
    ModelSpec massless;
    massless.dispersion = Dispersion::Massless;
    auto ess = essential_spectrum(curve, massless);
    for (double p : {0.0, 0.7, 1.4})
        CHECK(ess(p) >= min_e0 + massless.omega_min() - 1e-12);
}
