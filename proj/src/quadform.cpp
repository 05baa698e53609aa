#include "polaron/quadform.hpp"

#include <cmath>
#include <string>

#include "polaron/errors.hpp"

namespace polaron {

namespace {

constexpr double kPi = 3.14159265358979323846;

using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 16, 16>;

// In-place elimination of variables n..1; returns {amplitude, lambda}.
std::pair<double, double> reduce_in_place(SmallMat& M, int n, int d) {
    double pivot_product = 1.0;
    for (int i = n; i >= 1; --i) {
        const double piv = M(i, i);
        if (!(piv > 0.0))
            throw SingularFormError(
                "gaussian reduction: nonpositive pivot at variable k_" +
                std::to_string(i) +
                " (variable never exposed and no cutoff rate; the momentum "
                "integral is only defined under the Assumption 1 / Lemma 1 "
                "integrability hypothesis)");
        pivot_product *= piv;
        for (int r = 0; r < i; ++r) {
            const double f = M(r, i) / piv;
            for (int c = 0; c <= i - 1; ++c) M(r, c) -= f * M(i, c);
        }
    }
    double amplitude = std::pow(std::pow(kPi, n) / pivot_product, 0.5 * d);
    return {amplitude, M(0, 0)};
}

// Per-variable tensor factor: nodes (weight, rate) multiplying e^{-rate |k_m|^2},
// already folded with the dispersion factor for the exposure time s_m.
struct Factor {
    std::vector<double> w;
    std::vector<double> x;
};

Factor variable_factor(const ModelSpec& m, double s_m, const QuadOrders& orders,
                       const GaussianMixture& coupling) {
    Factor f;
    if (coupling.size() == 0) return f;  // v == 0
    if (m.dispersion == Dispersion::Constant) {
        const double damp = std::exp(-s_m);
        f.w.reserve(coupling.size());
        f.x = coupling.rates;
        for (double w : coupling.weights) f.w.push_back(w * damp);
        return f;
    }
    if (s_m <= 0.0) {
        // exp(-0 * omega) = 1; only valid together with a cutoff (checked by
        // the caller), where the coupling rates carry the decay.
        f.w = coupling.weights;
        f.x = coupling.rates;
        return f;
    }
    GaussianMixture disp = dispersion_mixture(m, s_m, orders.dispersion);
    f.w.reserve(coupling.size() * disp.size());
    f.x.reserve(coupling.size() * disp.size());
    for (std::size_t i = 0; i < coupling.size(); ++i)
        for (std::size_t j = 0; j < disp.size(); ++j) {
            f.w.push_back(coupling.weights[i] * disp.weights[j]);
            f.x.push_back(coupling.rates[i] + disp.rates[j]);
        }
    return f;
}

void prune_factor(Factor& f, double s_m, int d, double prune_rel) {
    if (f.w.empty() || prune_rel <= 0.0) return;
    // proxy for the node's contribution: weight times the single-variable
    // amplitude (pi/(s_m + x))^{d/2}
    std::vector<double> proxy(f.w.size());
    double best = 0.0;
    for (std::size_t i = 0; i < f.w.size(); ++i) {
        proxy[i] = f.w[i] * std::pow(kPi / (s_m + f.x[i]), 0.5 * d);
        best = std::max(best, proxy[i]);
    }
    Factor kept;
    for (std::size_t i = 0; i < f.w.size(); ++i) {
        if (proxy[i] >= prune_rel * best) {
            kept.w.push_back(f.w[i]);
            kept.x.push_back(f.x[i]);
        }
    }
    f = std::move(kept);
}

template <typename NodeFn>
void for_each_node(const CrossingTable& table, std::span<const double> times,
                   const ModelSpec& m, const QuadOrders& orders, NodeFn&& fn) {
    m.validate();
    const int n = table.n;
    if (2.0 * m.beta >= m.d)
        throw IntegrabilityError(
            "momentum_integral: beta >= d/2 makes |v|^2 non-integrable at k = 0 "
            "(Assumption 1 fails)");
    QuadraticForm base = assemble_quadratic_form(table, times);
    if (m.g == 0.0) return;

    if (m.cutoff == Cutoff::None) {
        for (int i = 0; i < n; ++i)
            if (!(base.omega_weights[i] > 0.0))
                throw IntegrabilityError(
                    "momentum_integral: variable k_" + std::to_string(i + 1) +
                    " has zero dispersion exposure (s_m = 0) and no cutoff; "
                    "rejected per the Lemma 1 integrability hypothesis");
    }

    const GaussianMixture coupling = coupling_mixture(m, orders.coupling);
    std::vector<Factor> factors;
    factors.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Factor f = variable_factor(m, base.omega_weights[i], orders, coupling);
        prune_factor(f, base.omega_weights[i], m.d, orders.prune_rel);
        if (f.w.empty()) return;  // zero integrand
        factors.push_back(std::move(f));
    }

    // odometer over the tensor product, lexicographic for a deterministic
    // reduction order
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    SmallMat M(n + 1, n + 1);
    for (;;) {
        M = base.Q;
        double w = 1.0;
        for (int i = 0; i < n; ++i) {
            w *= factors[static_cast<std::size_t>(i)].w[idx[static_cast<std::size_t>(i)]];
            M(i + 1, i + 1) += factors[static_cast<std::size_t>(i)].x[idx[static_cast<std::size_t>(i)]];
        }
        auto [c, lambda] = reduce_in_place(M, n, m.d);
        fn(w * c, lambda);
        int pos = n - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] ==
                               factors[static_cast<std::size_t>(pos)].w.size()) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
}

}  // namespace

double crossing_energy(const CrossingTable& table, int j, const Eigen::VectorXd& P,
                       std::span<const Eigen::VectorXd> k, const ModelSpec& m) {
    if (j < 0 || j > 2 * table.n)
        throw DimensionError("crossing_energy: slot index out of range");
    if (static_cast<int>(k.size()) != table.n)
        throw DimensionError("crossing_energy: need one momentum per pair");
    for (const auto& v : k)
        if (v.size() != P.size())
            throw DimensionError("crossing_energy: momentum dimension mismatch");
    Eigen::VectorXd q = P;
    double w = 0.0;
    for (int i = 1; i <= table.n; ++i) {
        if (table.member(i, j)) {
            q -= k[static_cast<std::size_t>(i - 1)];
            w += m.omega(k[static_cast<std::size_t>(i - 1)].norm());
        }
    }
    return q.squaredNorm() + w;
}

QuadraticForm assemble_quadratic_form(const CrossingTable& table,
                                      std::span<const double> times) {
    const int n = table.n;
    if (static_cast<int>(times.size()) != 2 * n + 1)
        throw DimensionError("assemble_quadratic_form: need 2n+1 times");
    QuadraticForm q;
    q.Q = Eigen::MatrixXd::Zero(n + 1, n + 1);
    q.omega_weights = Eigen::VectorXd::Zero(n);
    for (int j = 0; j <= 2 * n; ++j) {
        const double t = times[static_cast<std::size_t>(j)];
        if (t < 0.0) throw ConfigError("assemble_quadratic_form: negative time");
        if (t == 0.0) continue;
        q.Q(0, 0) += t;
        for (int a = 1; a <= n; ++a) {
            if (!table.member(a, j)) continue;
            q.Q(0, a) -= t;
            q.Q(a, 0) -= t;
            q.omega_weights[a - 1] += t;
            for (int b = 1; b <= n; ++b)
                if (table.member(b, j)) q.Q(a, b) += t;
        }
    }
    return q;
}

QuadraticForm schur_eliminate(const QuadraticForm& q) {
    const int n = q.n();
    if (n < 1) throw DimensionError("schur_eliminate: no variable to eliminate");
    const double piv = q.Q(n, n);
    if (!(piv > 0.0))
        throw SingularFormError(
            "schur_eliminate: Q_nn = 0 (degenerate: k_n never crossed)");
    QuadraticForm out;
    out.Q = q.Q.topLeftCorner(n, n) -
            q.Q.col(n).head(n) * q.Q.row(n).head(n) / piv;
    out.omega_weights = q.omega_weights.head(n - 1);
    return out;
}

ReducedGaussian gaussian_integral(const QuadraticForm& q, int d) {
    const int n = q.n();
    SmallMat M = q.Q;
    auto [c, lambda] = reduce_in_place(M, n, d);
    ReducedGaussian r;
    r.amplitude = c;
    r.exponent = lambda;
    return r;
}

std::vector<MixtureNode> momentum_integral(const CrossingTable& table,
                                           std::span<const double> times,
                                           const ModelSpec& m,
                                           const QuadOrders& orders) {
    std::vector<MixtureNode> nodes;
    for_each_node(table, times, m, orders,
                  [&](double w, double lambda) { nodes.push_back({w, lambda}); });
    return nodes;
}

void momentum_integral_accumulate(const CrossingTable& table,
                                  std::span<const double> times,
                                  const ModelSpec& m, const QuadOrders& orders,
                                  std::span<const double> us,
                                  std::span<double> out) {
    if (us.size() != out.size())
        throw DimensionError("momentum_integral_accumulate: us/out size mismatch");
    for_each_node(table, times, m, orders, [&](double w, double lambda) {
        for (std::size_t i = 0; i < us.size(); ++i)
            out[i] += w * std::exp(-lambda * us[i]);
    });
}

}  // namespace polaron
