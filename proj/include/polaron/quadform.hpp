#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "polaron/model.hpp"
#include "polaron/pairings.hpp"

namespace polaron {

// Rotation-invariant quadratic form Q(P, k) = sum_{ij} Q_ij k_i . k_j on the
// n+1 vector variables (index 0 carries P), plus the dispersion exposure
// times s_m accumulated from the same crossing table.
struct QuadraticForm {
    Eigen::MatrixXd Q;             // (n+1) x (n+1), symmetric PSD
    Eigen::VectorXd omega_weights; // s in R_+^n

    int n() const { return static_cast<int>(omega_weights.size()); }
};

// Reduced form of the momentum integral: int e^{-Q(P,k)} dk = c e^{-lambda |P|^2}.
struct ReducedGaussian {
    double amplitude = 0.0;  // c
    double exponent = 0.0;   // lambda in [0, Q_00]
};

// One node of the Laplace-transform mixture of the momentum integral.
struct MixtureNode {
    double weight = 0.0;
    double rate = 0.0;  // lambda
};

struct QuadOrders {
    int coupling = 32;
    int dispersion = 200;
    double prune_rel = 1e-14;  // drop tensor-factor nodes below this relative proxy weight
};

// Intermediate energy E^{(pi,j)}_P(k) = |P - sum_{l in M_j} k_l|^2
//                                       + sum_{l in M_j} omega(k_l).
double crossing_energy(const CrossingTable& table, int j,
                       const Eigen::VectorXd& P,
                       std::span<const Eigen::VectorXd> k,
                       const ModelSpec& m);

// sum_j t_j E^{(pi,j)}_P(k) = Q(P, k) + sum_m s_m omega(k_m); times has
// 2n+1 entries t_0..t_2n, all >= 0.
QuadraticForm assemble_quadratic_form(const CrossingTable& table,
                                      std::span<const double> times);

// Schur complement eliminating the last variable; requires Q_nn > 0.
QuadraticForm schur_eliminate(const QuadraticForm& q);

// Gaussian reduction by iterated Schur elimination (k_n down to k_1),
// c = prod (pi / pivot)^{d/2}, lambda = the remaining scalar coefficient.
ReducedGaussian gaussian_integral(const QuadraticForm& q, int d);

// Closed Gaussian-mixture form of
//   int_{R^{dn}} e^{-sum_j t_j E^{(pi,j)}_P(k)} prod_m |v(k_m)|^2 dk
// as a finite positive mixture sum_i w_i e^{-lambda_i |P|^2}.
std::vector<MixtureNode> momentum_integral(const CrossingTable& table,
                                           std::span<const double> times,
                                           const ModelSpec& m,
                                           const QuadOrders& orders = {});

// Streaming variant: accumulates sum_i w_i e^{-lambda_i u} for every u in
// `us` into `out` (adds to existing contents) without materializing nodes.
void momentum_integral_accumulate(const CrossingTable& table,
                                  std::span<const double> times,
                                  const ModelSpec& m, const QuadOrders& orders,
                                  std::span<const double> us,
                                  std::span<double> out);

}  // namespace polaron
