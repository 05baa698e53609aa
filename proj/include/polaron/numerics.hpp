#pragma once

#include <span>
#include <vector>

namespace polaron {

// Divided difference of x -> exp(-t x) on the given nodes (repeats allowed).
// Evaluated as the (0, m-1) entry of exp(-t J) for the Opitz bidiagonal matrix
// J = diag(nodes) + superdiag(1), which handles confluent nodes without
// cancellation.  exp(-t.)[b] == d/dx-style notation: one node gives exp(-t b).
double divdiff_exp(std::span<const double> nodes, double t);

// integral over the simplex {t_j >= 0, sum t_j = t} of exp(-sum t_j b_j),
// in closed form: (-1)^(m-1) * divdiff_exp(b, t) for m nodes.
double simplex_exp_integral(std::span<const double> nodes, double t);

// Least-squares line y ~= slope*x + intercept; returns {slope, intercept,
// max abs fit deviation}.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace polaron
