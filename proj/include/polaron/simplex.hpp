#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polaron/rng.hpp"

namespace polaron {

// Uniform samples on the simplex {t_i >= 0, sum_{i=0}^{dim} t_i = t}
// (dim+1 coordinates), via normalized exponential spacings.  The associated
// volume factor for unbiased integration is t^dim / dim!.
std::vector<std::vector<double>> simplex_samples(int dim, double t, int count,
                                                 std::uint64_t seed);

// Same, drawing from an existing stream (used for keyed per-task streams).
void simplex_samples_into(int dim, double t, int count, CounterRng& rng,
                          std::vector<std::vector<double>>& out);

double simplex_volume(int dim, double t);

// Grundmann-Moller cubature of index s (degree 2s+1) on the simplex
// {t_i >= 0, sum t_i = t} with dim+1 barycentric coordinates, uniformly
// subdivided `subdiv` times along each edge.  Supported for dim in {1, 2}.
// f receives the full coordinate vector (t_0 .. t_dim).
double integrate_simplex_gm(int dim, double t, int s, int subdiv,
                            const std::function<double(std::span<const double>)>& f);

// Node/weight form of the same rule (weights include the volume factor).
struct SimplexRule {
    std::vector<std::vector<double>> nodes;  // each of size dim+1, summing to t
    std::vector<double> weights;
};
SimplexRule gm_rule(int dim, double t, int s, int subdiv);

}  // namespace polaron
