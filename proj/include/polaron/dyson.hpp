#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "polaron/rng.hpp"

namespace polaron {

// Finite-dimensional model A + B with A positive definite diagonal and
// B = sqrt(A) C sqrt(A), ||C|| < 1.
struct MatrixModel {
    Eigen::VectorXd a_diag;  // eigenvalues of A, all > 0
    Eigen::MatrixXd C;       // symmetric, spectral norm < 1

    int dim() const { return static_cast<int>(a_diag.size()); }
    double c_norm() const;
    Eigen::MatrixXd B() const;
};

// A diagonal log-uniform in [0.1, 10]; C symmetric Gaussian rescaled to the
// target spectral norm.
MatrixModel random_matrix_model(int dim, double c_norm, CounterRng& rng);

// Same with off-diagonal block structure (creation/annihilation parity):
// C couples only the two halves of the basis.
MatrixModel random_parity_model(int dim, double c_norm, CounterRng& rng);

// Wedge contour Re z = -kappa + gamma |Im z|, legs truncated at |Im z| = im_max,
// node_count trapezoid nodes per leg.  im_max <= 0 selects the default height
// where |e^{-tz}| falls to 1e-14 of its apex value.
struct ContourSpec {
    double gamma = 0.5;
    double kappa = 1.0;
    int node_count = 2048;
    double im_max = 0.0;

    double resolved_im_max(double t) const;
};

// Parameters for a term of given order: kappa = 1/t, gamma = min(1/sqrt(n+1),
// 0.95 * the largest slope keeping the Neumann condition (1+g^2)^{1/2}||C|| < 1).
ContourSpec default_contour(const MatrixModel& model, int n, double t);

struct ContourTerm {
    Eigen::MatrixXd value;
    double quadrature_error = 0.0;  // half-node refinement difference
    double truncation_error = 0.0;  // estimated dropped tail
};

// D_n by trapezoid quadrature of the resolvent product along the wedge.
ContourTerm contour_term(const MatrixModel& model, int n, double t,
                         const ContourSpec& spec);

// The classical time-ordered Dyson term
//   (-1)^n int_{simplex} e^{-t0 A} B ... B e^{-tn A} dt,
// evaluated exactly via divided differences of e^{-t.} on the spectral nodes
// along operator paths (A diagonal).
Eigen::MatrixXd simplex_term(const MatrixModel& model, int n, double t);

// || e^{-t(A+B)} - e^{-tA} - sum_{n<=N} D_n ||_2; the exponentials come from
// dense symmetric eigendecompositions.
double expansion_residual(const MatrixModel& model, double t, int N,
                          const ContourSpec& spec);

// Geometric tail sum_{n>N} (e^{3/2}/pi) sqrt(n+2) c^n (numerically summed).
double expansion_tail_bound(double c_norm, int N);

struct NormBoundCheck {
    double lhs = 0.0;       // ||D_n|| (or the weighted norm)
    double rhs = 0.0;       // paper bound
    double allowance = 0.0; // quadrature error
    bool pass = false;
};

// ||D_n|| <= (e^{3/2}/pi) sqrt(n+2) ||C||^n.
NormBoundCheck norm_bound_check(const MatrixModel& model, double t, int n,
                                const ContourSpec& spec);

// ||sqrt(A) D_n sqrt(A)|| <= (e/(pi t)) (n+2)^{(n+2)/2}/(n+1)^{(n+1)/2} ||C||^n.
NormBoundCheck weighted_norm_bound_check(const MatrixModel& model, double t,
                                         int n, const ContourSpec& spec);

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

// (1/2 pi i) int e^{-tz} prod (z - b_j)^{-1} dz  ==  simplex integral of
// e^{-sum t_j b_j}, the latter in closed divided-difference form.
IdentityCheck contour_to_simplex_identity(std::span<const double> b, double t,
                                          const ContourSpec& spec);

}  // namespace polaron
