#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polaron/model.hpp"
#include "polaron/quadform.hpp"

namespace polaron {

// Value of a diagrammatic series with statistical error and per-order
// breakdown.  value = exp(-t u) + sum of contributions (for heat series).
struct SeriesEstimate {
    double value = 0.0;
    double std_error = 0.0;
    struct Order {
        int n = 0;
        double contribution = 0.0;
        double std_error = 0.0;
    };
    std::vector<Order> per_order;
    int truncation_order = 0;
    double truncation_hint = 0.0;  // magnitude of the last included order
};

struct HeatCurve {
    double t = 0.0;
    struct Sample {
        double u = 0.0;
        double F = 0.0;
        double std_error = 0.0;
    };
    std::vector<Sample> samples;
};

struct SeriesOptions {
    int nmax = 3;
    int nmax_cap = 5;
    int mc_count = 2000;
    int batch_size = 256;
    std::uint64_t seed = 1;
    QuadOrders quad;
    bool deterministic_low_dim = true;  // GM rule when simplex dim <= 2
    int gm_index = 7;                   // rule degree 2s+1
    int pairing_cap = kDefaultPairingCap;
    int threads = 1;
    double trunc_fraction = 0.1;  // ground_energy window gate
    // statistical monotonicity path: decorrelate streams across grid points
    bool independent_u_streams = false;
};

// Order-n term of the heat expansion at points u = |P|^2 (samples shared
// across the u grid unless independent_u_streams is set).
struct OrderCurve {
    std::vector<double> value;
    std::vector<double> std_error;
};
OrderCurve order_contribution_curve(int n, const ModelSpec& m,
                                    std::span<const double> us, double t,
                                    const SeriesOptions& opt);

// Single-point convenience wrapper.
SeriesEstimate::Order order_contribution(int n, const ModelSpec& m, double u,
                                         double t, const SeriesOptions& opt);

SeriesEstimate heat_value(const ModelSpec& m, double u, double t,
                          const SeriesOptions& opt);
std::vector<SeriesEstimate> heat_estimates(const ModelSpec& m,
                                           std::span<const double> us, double t,
                                           const SeriesOptions& opt);
HeatCurve heat_curve(const ModelSpec& m, std::span<const double> us, double t,
                     const SeriesOptions& opt);

// Renewal kernel K(s): interlacing pairings only, simplex of dimension 2n-1,
// exponent indices j = 0..2n-1.
SeriesEstimate renewal_kernel(const ModelSpec& m, double u, double s,
                              const SeriesOptions& opt);

// |F(t) - e^{-tu} - int_0^t F(t-s) K(s) ds| on a uniform trapezoid grid,
// with an error budget (3-sigma MC + Richardson half-grid + the computable
// truncation cross-terms of matched order).
struct RenewalReport {
    double residual = 0.0;
    double mc_error = 0.0;
    double quadrature_error = 0.0;
    double truncation_estimate = 0.0;
    int grid_count = 0;
    double budget() const { return mc_error + quadrature_error + truncation_estimate; }
    bool pass() const { return residual <= budget(); }
};
RenewalReport renewal_residual(const ModelSpec& m, double u, double t,
                               int grid_count, const SeriesOptions& opt);

struct TWindow {
    double t_min = 2.0;
    double t_max = 6.0;
    int count = 9;
};

// Least-squares slope of -ln F(t) over the window; throws WindowError when
// the truncation hint at t_max exceeds trunc_fraction of the series value.
struct GroundEnergy {
    double E0 = 0.0;
    double fit_residual = 0.0;
};
GroundEnergy ground_energy(const ModelSpec& m, double u, const TWindow& window,
                           const SeriesOptions& opt);
EnergyCurve ground_energy_curve(const ModelSpec& m, std::span<const double> us,
                                const TWindow& window, const SeriesOptions& opt);

// Alternating-sign finite differences of F on a uniform u grid.
struct MonotonicityReport {
    struct OrderCheck {
        int order = 0;
        double worst_violation = 0.0;  // max of sign-adjusted difference defects
        double noise_floor = 0.0;
        bool pass = false;
    };
    std::vector<OrderCheck> orders;
    bool pass = true;
};
MonotonicityReport monotonicity_check(const ModelSpec& m, double t,
                                      std::span<const double> u_grid,
                                      int max_order, const SeriesOptions& opt);

// Same grid differences evaluated through the shared positive-mixture
// representation (one stream for all u): exact alternation up to roundoff.
MonotonicityReport monotonicity_check_mixture(const ModelSpec& m, double t,
                                              std::span<const double> u_grid,
                                              int max_order,
                                              const SeriesOptions& opt);

struct ConcavityReport {
    double worst_excess = 0.0;      // max (second difference - tolerance)
    double worst_second_diff = 0.0;
    double worst_tolerance = 0.0;
    std::size_t worst_index = 0;    // center of the most-violating triple
    bool pass = true;
};
ConcavityReport concavity_check(const EnergyCurve& curve);

}  // namespace polaron
