#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "polaron/model.hpp"
#include "polaron/series.hpp"

namespace polaron {

// Finitely many discretized field modes (momentum, frequency, amplitude).
struct DiscreteModes {
    struct Mode {
        Eigen::VectorXd momentum;  // kappa_i in R^d
        double frequency = 1.0;    // omega_i > 0
        double amplitude = 0.0;    // g_i (real; the Hamiltonian is real symmetric)
    };
    std::vector<Mode> modes;
    std::string provenance;  // "single-mode" or grid description

    int d() const { return modes.empty() ? 0 : static_cast<int>(modes[0].momentum.size()); }
};

// single mode at momentum kappa e_1 (d-dimensional), frequency omega, amplitude g
DiscreteModes single_mode(int d, double kappa, double omega, double g);

// symmetric 1-d grid kappa in {-K, ..., K} step spacing, frequencies/amplitudes
// from the parent model (g_i = v(kappa_i) sqrt(spacing)); modes at kappa = 0
// are skipped when |v| diverges there.
DiscreteModes grid_modes_1d(const ModelSpec& m, double k_max, double spacing);

// Occupation-number basis with total boson number <= max_total.
struct FockTruncation {
    int max_total = 4;
    int basis_cap = 20000;
};

// Basis of occupation multi-indices, vacuum first.
std::vector<std::vector<int>> fock_basis(int mode_count, const FockTruncation& trunc);

// H(P) on the truncated basis: diagonal |P - sum kappa_i n_i|^2 + sum omega_i n_i,
// off-diagonal g_i sqrt(n_i + 1) between states differing by one boson.
Eigen::MatrixXd build_hamiltonian(const DiscreteModes& modes,
                                  const FockTruncation& trunc,
                                  const Eigen::VectorXd& P);

// <Omega| e^{-tH} |Omega> by dense symmetric eigendecomposition.
double vacuum_heat(const Eigen::MatrixXd& H, double t);

// Heat expansion for the discrete-mode model: momentum integrals become mode
// sums and the time-simplex integrals are evaluated in closed form (divided
// differences), so the result is deterministic.
SeriesEstimate heat_value_discrete(const DiscreteModes& modes,
                                   const Eigen::VectorXd& P, double t, int nmax,
                                   int pairing_cap = kDefaultPairingCap);

struct OracleMatchReport {
    double f_series = 0.0;
    double f_oracle = 0.0;
    double discrepancy = 0.0;
    double truncation_estimate = 0.0;   // series order truncation, extrapolated
    double fock_estimate = 0.0;         // |F(N_max) - F(N_max + 1)|
    double budget() const { return truncation_estimate + fock_estimate + 1e-12; }
    bool pass() const { return discrepancy <= budget(); }
};

// Cross-validate the pairing series against the exact truncated-Fock heat
// value at momentum P (u = |P|^2).
OracleMatchReport oracle_series_match(const DiscreteModes& modes,
                                      const FockTruncation& trunc,
                                      const Eigen::VectorXd& P, double t,
                                      int nmax, int pairing_cap = kDefaultPairingCap);

}  // namespace polaron
