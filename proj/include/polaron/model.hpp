#pragma once

#include <functional>
#include <string>
#include <vector>

namespace polaron {

enum class Dispersion { Constant, Massless, Massive };
enum class Cutoff { None, Gaussian };

// Radial power-law polaron model: v(k) = g |k|^-beta, optional Gaussian factor
// exp(-|k|^2/Lambda^2) on |v|^2; dispersion constant 1, |k| or sqrt(|k|^2+m^2).
struct ModelSpec {
    int d = 3;
    Dispersion dispersion = Dispersion::Constant;
    double mass = 0.0;  // used by Massive only
    double g = 0.0;
    double beta = 0.0;
    Cutoff cutoff = Cutoff::None;
    double cutoff_lambda = 1.0;

    double omega(double k_norm) const;
    double coupling_sq(double k_norm) const;  // |v(k)|^2 including cutoff factor
    double omega_min() const { return dispersion == Dispersion::Constant ? 1.0
                                   : (dispersion == Dispersion::Massive ? mass : 0.0); }
    void validate() const;
    std::string describe() const;
};

// Finite positive mixture sum_i w_i exp(-x_i u) in the variable u = |k|^2.
// Strictly positive weights encode the Bernstein/complete-monotonicity
// structure; `exact` marks closed single-node representations.
struct GaussianMixture {
    std::vector<double> weights;
    std::vector<double> rates;
    bool exact = false;

    double eval(double u) const;
    std::size_t size() const { return weights.size(); }
};

struct Assumption1Report {
    double I1 = 0.0;         // integral |v1|^2/omega over |k| <= R
    double I2 = 0.0;         // integral |v2|^2/|k|^2 (1 + 1/omega) over |k| > R
    bool I1_finite = true;
    bool I2_finite = true;
    bool feasible = true;
    std::string divergent;   // which integral diverged, when infeasible
};

Assumption1Report check_assumption1(const ModelSpec& m, double R);

// Lieb-Yamazaki form-bound constants for the split at radius R:
//   +-Phi(v) <= eps |P-Pf|^2 + (eps + lambda/eps) dGamma(omega) + a
struct FormBoundReport {
    double split_radius = 0.0;
    double epsilon = 0.0;
    double lambda = 0.0;      // 4 int_{|k|>R} |v|^2/(|k|^2 omega)
    double lambda_rel = 0.0;  // eps + lambda/eps, coefficient of dGamma(omega)
    double shift = 0.0;       // eps^{-1} (I1 + 2 int_{|k|>R} |v|^2/|k|^2)
};

FormBoundReport lieb_yamazaki_constants(const ModelSpec& m, double R, double eps);

// Mixture representation of |v(k)|^2 as a function of u = |k|^2.  Exact single
// node for beta = 0; log-substitution trapezoid discretization of the Gamma
// integral otherwise.  A Gaussian cutoff shifts every rate by 1/Lambda^2.
GaussianMixture coupling_mixture(const ModelSpec& m, int quadrature_order);

// Mixture representation of exp(-s omega(k)) as a function of u = |k|^2.
// Constant dispersion: exact single node (exp(-s), 0).  Massless/massive:
// subordination formula discretized on a truncated log-tau window.
GaussianMixture dispersion_mixture(const ModelSpec& m, double s, int quadrature_order);

// Sampled ground-state energy curve E0(u), u = |P|^2, with per-point fit
// residuals (produced by series::ground_energy_curve).
struct EnergyCurve {
    struct Sample {
        double u = 0.0;
        double E0 = 0.0;
        double fit_residual = 0.0;
    };
    std::vector<Sample> samples;
};

// Bottom of the essential spectrum evaluated from a sampled energy curve:
//   E_ess(P) = inf_{n>=1} inf_k { E0(P - sum k_j) + sum omega(k_j) }.
// For the dispersion family here the infimum is attained at n = 1, and for
// constant dispersion it reduces to min E0 + 1.
class EssentialSpectrum {
  public:
    EssentialSpectrum(EnergyCurve curve, ModelSpec model);

    double operator()(double p_norm) const;

  private:
    EnergyCurve curve_;
    ModelSpec model_;
    double min_e0_ = 0.0;
};

EssentialSpectrum essential_spectrum(const EnergyCurve& curve, const ModelSpec& m);

// Surface area of the unit sphere in R^d.
double sphere_area(int d);

}  // namespace polaron
