#include "polaron/simplex.hpp"

#include <cmath>
#include <functional>

#include "polaron/errors.hpp"

namespace polaron {

void simplex_samples_into(int dim, double t, int count, CounterRng& rng,
                          std::vector<std::vector<double>>& out) {
    out.clear();
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<double> v(static_cast<std::size_t>(dim) + 1);
        if (dim == 0) {
            v[0] = t;
        } else {
            double sum = 0.0;
            for (auto& e : v) {
                e = rng.exponential();
                sum += e;
            }
            for (auto& e : v) e *= t / sum;
        }
        out.push_back(std::move(v));
    }
}

std::vector<std::vector<double>> simplex_samples(int dim, double t, int count,
                                                 std::uint64_t seed) {
    if (count < 1) throw ConfigError("simplex_samples: count must be >= 1");
    CounterRng rng(seed);
    std::vector<std::vector<double>> out;
    simplex_samples_into(dim, t, count, rng, out);
    return out;
}

double simplex_volume(int dim, double t) {
    double v = 1.0;
    for (int i = 1; i <= dim; ++i) v *= t / i;
    return v;
}

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// Grundmann-Moller nodes/weights on the standard simplex (barycentric form,
// weights summing to 1/d!).  Degree of exactness 2s+1.
void gm_standard(int d, int s, std::vector<std::vector<double>>& bary,
                 std::vector<double>& w) {
    bary.clear();
    w.clear();
    for (int i = 0; i <= s; ++i) {
        const int denom = d + 2 * (s - i) + 1;
        // these raw coefficients already sum to Vol(standard simplex) = 1/d!
        double A = std::pow(static_cast<double>(denom), 2 * s + 1) /
                   (std::pow(4.0, s) * factorial(i) * factorial(2 * s + d + 1 - i));
        if (i % 2 == 1) A = -A;
        // all beta in N_0^{d+1} with |beta| = s - i
        std::vector<int> beta(static_cast<std::size_t>(d) + 1, 0);
        const int total = s - i;
        // iterate compositions of `total` into d+1 parts
        std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == d) {
                beta[static_cast<std::size_t>(pos)] = left;
                std::vector<double> node(static_cast<std::size_t>(d) + 1);
                for (int j = 0; j <= d; ++j)
                    node[static_cast<std::size_t>(j)] =
                        (2.0 * beta[static_cast<std::size_t>(j)] + 1.0) / denom;
                bary.push_back(std::move(node));
                w.push_back(A);
                return;
            }
            for (int b = 0; b <= left; ++b) {
                beta[static_cast<std::size_t>(pos)] = b;
                rec(pos + 1, left - b);
            }
        };
        rec(0, total);
    }
}

}  // namespace

SimplexRule gm_rule(int dim, double t, int s, int subdiv) {
    if (dim != 1 && dim != 2)
        throw ConfigError("gm_rule: only simplex dimensions 1 and 2 supported");
    if (s < 0 || subdiv < 1) throw ConfigError("gm_rule: bad rule parameters");
    std::vector<std::vector<double>> bary;
    std::vector<double> wstd;
    gm_standard(dim, s, bary, wstd);

    SimplexRule rule;
    const double dfac = factorial(dim);
    if (dim == 1) {
        // subintervals of [0, t] in the free coordinate t_1
        const double h = t / subdiv;
        for (int seg = 0; seg < subdiv; ++seg) {
            const double a = seg * h;
            for (std::size_t q = 0; q < bary.size(); ++q) {
                const double x = a + bary[q][1] * h;
                rule.nodes.push_back({t - x, x});
                rule.weights.push_back(wstd[q] * dfac * h);
            }
        }
        return rule;
    }
    // dim == 2: free coordinates (x, y) = (t_1, t_2) over the right triangle
    // x, y >= 0, x + y <= t; uniform refinement into subdiv^2 sub-triangles.
    const double h = t / subdiv;
    auto emit = [&](double v0x, double v0y, double v1x, double v1y, double v2x,
                    double v2y) {
        for (std::size_t q = 0; q < bary.size(); ++q) {
            const double b1 = bary[q][1], b2 = bary[q][2];
            const double x = v0x + b1 * (v1x - v0x) + b2 * (v2x - v0x);
            const double y = v0y + b1 * (v1y - v0y) + b2 * (v2y - v0y);
            rule.nodes.push_back({t - x - y, x, y});
            rule.weights.push_back(wstd[q] * dfac * (h * h / 2.0));
        }
    };
    for (int i = 0; i < subdiv; ++i) {
        for (int j = 0; j < subdiv - i; ++j) {
            emit(i * h, j * h, (i + 1) * h, j * h, i * h, (j + 1) * h);
            if (j < subdiv - i - 1)
                emit((i + 1) * h, j * h, (i + 1) * h, (j + 1) * h, i * h, (j + 1) * h);
        }
    }
    return rule;
}

double integrate_simplex_gm(int dim, double t, int s, int subdiv,
                            const std::function<double(std::span<const double>)>& f) {
    SimplexRule rule = gm_rule(dim, t, s, subdiv);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        total += rule.weights[i] * f(rule.nodes[i]);
    return total;
}

}  // namespace polaron
