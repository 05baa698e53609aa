#include "polaron/fock.hpp"

#include <cmath>
#include <map>
#include <string>

#include "polaron/errors.hpp"
#include "polaron/numerics.hpp"
#include "polaron/pairings.hpp"

namespace polaron {

DiscreteModes single_mode(int d, double kappa, double omega, double g) {
    DiscreteModes dm;
    DiscreteModes::Mode mode;
    mode.momentum = Eigen::VectorXd::Zero(d);
    mode.momentum[0] = kappa;
    mode.frequency = omega;
    mode.amplitude = g;
    dm.modes.push_back(std::move(mode));
    dm.provenance = "single-mode";
    return dm;
}

DiscreteModes grid_modes_1d(const ModelSpec& m, double k_max, double spacing) {
    if (m.d != 1) throw ConfigError("grid_modes_1d: model dimension must be 1");
    if (spacing <= 0.0 || k_max <= 0.0) throw ConfigError("grid_modes_1d: bad grid");
    DiscreteModes dm;
    const int K = static_cast<int>(std::floor(k_max / spacing + 1e-12));
    for (int i = -K; i <= K; ++i) {
        const double kappa = i * spacing;
        if (i == 0 && m.beta > 0.0) continue;  // |v| singular at k = 0
        DiscreteModes::Mode mode;
        mode.momentum = Eigen::VectorXd::Constant(1, kappa);
        mode.frequency = m.omega(std::abs(kappa));
        mode.amplitude = std::sqrt(m.coupling_sq(std::abs(kappa)) * spacing);
        dm.modes.push_back(std::move(mode));
    }
    dm.provenance = "grid-1d spacing=" + std::to_string(spacing) +
                    " k_max=" + std::to_string(k_max);
    return dm;
}

std::vector<std::vector<int>> fock_basis(int mode_count, const FockTruncation& trunc) {
    if (trunc.max_total < 0) throw ConfigError("fock_basis: max_total must be >= 0");
    std::vector<std::vector<int>> basis;
    std::vector<int> occ(static_cast<std::size_t>(mode_count), 0);
    // enumerate occupations with total <= max_total, vacuum first
    // lexicographic recursive enumeration
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == mode_count) {
            basis.push_back(occ);
            if (static_cast<int>(basis.size()) > trunc.basis_cap)
                throw SizeLimitError("fock_basis: basis cap " +
                                     std::to_string(trunc.basis_cap) + " exceeded");
            return;
        }
        for (int n = 0; n <= remaining; ++n) {
            occ[static_cast<std::size_t>(pos)] = n;
            self(self, pos + 1, remaining - n);
        }
        occ[static_cast<std::size_t>(pos)] = 0;
    };
    rec(rec, 0, trunc.max_total);  // all-zero occupation (vacuum) comes first
    return basis;
}

Eigen::MatrixXd build_hamiltonian(const DiscreteModes& modes,
                                  const FockTruncation& trunc,
                                  const Eigen::VectorXd& P) {
    const int M = static_cast<int>(modes.modes.size());
    if (M > 0 && P.size() != modes.modes[0].momentum.size())
        throw DimensionError("build_hamiltonian: momentum dimension mismatch");
    auto basis = fock_basis(M, trunc);
    const int dim = static_cast<int>(basis.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < dim; ++i) index[basis[static_cast<std::size_t>(i)]] = i;

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const auto& occ = basis[static_cast<std::size_t>(i)];
        Eigen::VectorXd ptot = P;
        double field = 0.0;
        int total = 0;
        for (int a = 0; a < M; ++a) {
            const auto& mode = modes.modes[static_cast<std::size_t>(a)];
            ptot -= occ[static_cast<std::size_t>(a)] * mode.momentum;
            field += occ[static_cast<std::size_t>(a)] * mode.frequency;
            total += occ[static_cast<std::size_t>(a)];
        }
        H(i, i) = ptot.squaredNorm() + field;
        if (total < trunc.max_total) {
            for (int a = 0; a < M; ++a) {
                std::vector<int> up = occ;
                ++up[static_cast<std::size_t>(a)];
                auto it = index.find(up);
                if (it == index.end()) continue;
                const double el = modes.modes[static_cast<std::size_t>(a)].amplitude *
                                  std::sqrt(occ[static_cast<std::size_t>(a)] + 1.0);
                H(i, it->second) = el;
                H(it->second, i) = el;
            }
        }
    }
    return H;
}

double vacuum_heat(const Eigen::MatrixXd& H, double t) {
    if (t < 0.0) throw ConfigError("vacuum_heat: t must be >= 0");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    const auto& w = es.eigenvalues();
    const auto& V = es.eigenvectors();
    double f = 0.0;
    for (int j = 0; j < H.rows(); ++j)
        f += V(0, j) * V(0, j) * std::exp(-t * w[j]);
    return f;
}

SeriesEstimate heat_value_discrete(const DiscreteModes& modes,
                                   const Eigen::VectorXd& P, double t, int nmax,
                                   int pairing_cap) {
    const int M = static_cast<int>(modes.modes.size());
    SeriesEstimate est;
    est.value = std::exp(-t * P.squaredNorm());
    est.truncation_order = nmax;
    if (M == 0) {
        for (int n = 1; n <= nmax; ++n) est.per_order.push_back({n, 0.0, 0.0});
        return est;
    }
    for (int n = 1; n <= nmax; ++n) {
        double contrib = 0.0;
        auto pairings = enumerate_pairings(n, pairing_cap);
        std::vector<int> assign(static_cast<std::size_t>(n), 0);
        std::vector<double> energies(static_cast<std::size_t>(2 * n) + 1);
        for (const Pairing& p : pairings) {
            CrossingTable table = crossing_table(p);
            // odometer over mode assignments of the n pair lines
            for (;;) {
                double amp = 1.0;
                for (int i = 0; i < n; ++i) {
                    const double g =
                        modes.modes[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])].amplitude;
                    amp *= g * g;
                }
                if (amp != 0.0) {
                    for (int j = 0; j <= 2 * n; ++j) {
                        Eigen::VectorXd q = P;
                        double field = 0.0;
                        for (int i = 1; i <= n; ++i) {
                            if (!table.member(i, j)) continue;
                            const auto& mode =
                                modes.modes[static_cast<std::size_t>(assign[static_cast<std::size_t>(i - 1)])];
                            q -= mode.momentum;
                            field += mode.frequency;
                        }
                        energies[static_cast<std::size_t>(j)] = q.squaredNorm() + field;
                    }
                    contrib += amp * simplex_exp_integral(energies, t);
                }
                int pos = n - 1;
                while (pos >= 0 && ++assign[static_cast<std::size_t>(pos)] == M) {
                    assign[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
        est.per_order.push_back({n, contrib, 0.0});
        est.value += contrib;
        est.truncation_hint = std::abs(contrib);
    }
    return est;
}

OracleMatchReport oracle_series_match(const DiscreteModes& modes,
                                      const FockTruncation& trunc,
                                      const Eigen::VectorXd& P, double t,
                                      int nmax, int pairing_cap) {
    OracleMatchReport rep;
    SeriesEstimate series = heat_value_discrete(modes, P, t, nmax, pairing_cap);
    rep.f_series = series.value;

    Eigen::MatrixXd H = build_hamiltonian(modes, trunc, P);
    rep.f_oracle = vacuum_heat(H, t);
    rep.discrepancy = std::abs(rep.f_series - rep.f_oracle);

    // series truncation: geometric extrapolation of the last two orders
    if (series.per_order.size() >= 2) {
        const double last = std::abs(series.per_order.back().contribution);
        const double prev =
            std::abs(series.per_order[series.per_order.size() - 2].contribution);
        const double ratio = prev > 0.0 ? std::min(0.9, last / prev) : 0.5;
        rep.truncation_estimate = last * ratio / (1.0 - ratio);
    } else if (!series.per_order.empty()) {
        rep.truncation_estimate = std::abs(series.per_order.back().contribution);
    }

    // Fock truncation: compare against one more boson
    FockTruncation bigger = trunc;
    bigger.max_total += 1;
    Eigen::MatrixXd H2 = build_hamiltonian(modes, bigger, P);
    rep.fock_estimate = std::abs(vacuum_heat(H2, t) - rep.f_oracle);
    return rep;
}

}  // namespace polaron
