#include "polaron/numerics.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <cstddef>

#include "polaron/errors.hpp"

namespace polaron {

double divdiff_exp(std::span<const double> nodes, double t) {
    const std::size_t m = nodes.size();
    if (m == 0) throw DimensionError("divdiff_exp: empty node list");
    if (m == 1) return std::exp(-t * nodes[0]);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        J(i, i) = -t * nodes[i];
        if (i + 1 < m) J(i, i + 1) = -t;
    }
    // J above is -t * (diag(nodes) + superdiag(1)); by Opitz' theorem the
    // corner entry of its exponential is the divided difference itself.
    Eigen::MatrixXd E = J.exp();
    return E(0, static_cast<Eigen::Index>(m - 1));
}

double simplex_exp_integral(std::span<const double> nodes, double t) {
    const std::size_t m = nodes.size();
    double dd = divdiff_exp(nodes, t);
    return (m % 2 == 1) ? dd : -dd;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw DimensionError("fit_line: need >= 2 paired points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < n; ++i) {
        double dev = std::abs(fit.slope * x[i] + fit.intercept - y[i]);
        if (dev > fit.max_residual) fit.max_residual = dev;
    }
    return fit;
}

}  // namespace polaron
