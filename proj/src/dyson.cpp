#include "polaron/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "polaron/errors.hpp"
#include "polaron/numerics.hpp"

namespace polaron {

namespace {
constexpr double kPi = 3.14159265358979323846;
using Complex = std::complex<double>;
}

double MatrixModel::c_norm() const {
    if (C.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C);
    return std::max(std::abs(es.eigenvalues().minCoeff()),
                    std::abs(es.eigenvalues().maxCoeff()));
}

Eigen::MatrixXd MatrixModel::B() const {
    Eigen::VectorXd root = a_diag.cwiseSqrt();
    return root.asDiagonal() * C * root.asDiagonal();
}

MatrixModel random_matrix_model(int dim, double c_norm, CounterRng& rng) {
    MatrixModel m;
    m.a_diag.resize(dim);
    for (int i = 0; i < dim; ++i) {
        // log-uniform in [0.1, 10]
        m.a_diag[i] = std::pow(10.0, rng.uniform() * 2.0 - 1.0);
    }
    Eigen::MatrixXd G(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) G(i, j) = rng.normal();
    m.C = 0.5 * (G + G.transpose());
    if (c_norm > 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.C);
        double norm = std::max(std::abs(es.eigenvalues().minCoeff()),
                               std::abs(es.eigenvalues().maxCoeff()));
        if (norm > 0.0) m.C *= c_norm / norm;
    } else {
        m.C.setZero();
    }
    return m;
}

MatrixModel random_parity_model(int dim, double c_norm, CounterRng& rng) {
    MatrixModel m = random_matrix_model(dim, 0.0, rng);
    const int half = dim / 2;
    Eigen::MatrixXd X(dim, dim);
    X.setZero();
    for (int i = 0; i < half; ++i)
        for (int j = half; j < dim; ++j) {
            X(i, j) = rng.normal();
            X(j, i) = X(i, j);
        }
    if (c_norm > 0.0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(X);
        double norm = std::max(std::abs(es.eigenvalues().minCoeff()),
                               std::abs(es.eigenvalues().maxCoeff()));
        if (norm > 0.0) X *= c_norm / norm;
    }
    m.C = X;
    return m;
}

double ContourSpec::resolved_im_max(double t) const {
    if (im_max > 0.0) return im_max;
    // |e^{-tz}| relative to the apex decays like e^{-t gamma y}
    return 14.0 * std::log(10.0) / (t * gamma);
}

ContourSpec default_contour(const MatrixModel& model, int n, double t) {
    ContourSpec spec;
    spec.kappa = 1.0 / t;
    double gamma = 1.0 / std::sqrt(n + 1.0);
    const double cn = model.c_norm();
    if (cn > 0.0) {
        const double limit = std::sqrt(1.0 / (cn * cn) - 1.0);
        gamma = std::min(gamma, 0.95 * limit);
    }
    spec.gamma = gamma;
    return spec;
}

namespace {

Eigen::MatrixXcd integrand_Dn(const MatrixModel& model, int n, double t,
                              const Complex& z) {
    const int d = model.dim();
    Eigen::VectorXcd res(d);  // (z - A)^{-1} diagonal
    for (int i = 0; i < d; ++i) res[i] = 1.0 / (z - model.a_diag[i]);
    Eigen::VectorXcd sqrtA = model.a_diag.cwiseSqrt().cast<Complex>();
    // A^{1/2} (z-A)^{-1} [C A (z-A)^{-1}]^{n-1} C A^{1/2} (z-A)^{-1}
    Eigen::MatrixXcd M =
        (sqrtA.array() * res.array()).matrix().asDiagonal() * Eigen::MatrixXcd::Identity(d, d);
    for (int k = 0; k < n - 1; ++k) {
        Eigen::MatrixXcd CA = model.C.cast<Complex>();
        for (int c = 0; c < d; ++c) CA.col(c) *= model.a_diag[c] * res[c];
        M = M * CA;
    }
    Eigen::MatrixXcd tail = model.C.cast<Complex>();
    for (int c = 0; c < d; ++c) tail.col(c) *= sqrtA[c] * res[c];
    M = M * tail;
    return std::exp(-t * z) * M;
}

}  // namespace

ContourTerm contour_term(const MatrixModel& model, int n, double t,
                         const ContourSpec& spec) {
    if (n < 1) throw ConfigError("contour_term: n must be >= 1");
    if (t <= 0.0) throw ConfigError("contour_term: t must be > 0");
    const double cn = model.c_norm();
    if (cn * std::sqrt(1.0 + spec.gamma * spec.gamma) >= 1.0)
        throw ContourError(
            "contour_term: ||C|| (1+gamma^2)^{1/2} >= 1; flatten the wedge (smaller gamma)");

    const int d = model.dim();
    const int nodes = spec.node_count + (spec.node_count % 2);  // even, for the half grid
    const double y_max = spec.resolved_im_max(t);
    const double h = y_max / nodes;

    // trapezoid on each leg, top-to-bottom orientation folded into the sign
    Eigen::MatrixXcd fine = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd coarse = Eigen::MatrixXcd::Zero(d, d);
    double tail_norm = 0.0;
    for (int k = -nodes; k <= nodes; ++k) {
        const double y = k * h;
        const Complex z(-spec.kappa + spec.gamma * std::abs(y), y);
        Complex dz(spec.gamma * ((y > 0) ? 1.0 : (y < 0 ? -1.0 : 0.0)), 1.0);
        if (k == 0) dz = Complex(0.0, 1.0);
        const double w = (std::abs(k) == nodes) ? 0.5 : 1.0;
        Eigen::MatrixXcd f = integrand_Dn(model, n, t, z);
        fine += f * (-w * h) * dz;
        if (k % 2 == 0) {
            const double w2 = (std::abs(k) == nodes) ? 0.5 : 1.0;
            coarse += f * (-w2 * 2.0 * h) * dz;
        }
        if (std::abs(k) == nodes)
            tail_norm = std::max(tail_norm, f.norm() * std::abs(dz));
    }
    const Complex scale = Complex(1.0, 0.0) / Complex(0.0, 2.0 * kPi);
    fine *= scale;
    coarse *= scale;

    ContourTerm term;
    term.value = fine.real();
    term.quadrature_error = (fine - coarse).norm();
    // both legs decay like e^{-t gamma (y - y_max)} past the truncation height
    term.truncation_error = 2.0 * tail_norm / (t * spec.gamma) / (2.0 * kPi);
    const double scale_ref = std::max(1.0, term.value.norm());
    if (term.truncation_error > 1e-8 * scale_ref)
        throw ContourError(
            "contour_term: contour too short (estimated tail " +
            std::to_string(term.truncation_error) + "); raise im_max above " +
            std::to_string(y_max * 1.5));
    return term;
}

Eigen::MatrixXd simplex_term(const MatrixModel& model, int n, double t) {
    if (n < 1) throw ConfigError("simplex_term: n must be >= 1");
    const int d = model.dim();
    const Eigen::MatrixXd B = model.B();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
    // entry (i,j): sum over interior paths m_1..m_{n-1} of
    //   prod B * f[a_i, a_{m_1}, .., a_j],  f = e^{-t.}
    // divided differences memoized by the sorted node multiset.
    std::map<std::vector<int>, double> dd_cache;
    std::vector<int> path(static_cast<std::size_t>(n) + 1, 0);
    std::vector<double> nodes(static_cast<std::size_t>(n) + 1);

    auto dd_for = [&](const std::vector<int>& indices) {
        std::vector<int> key = indices;
        std::sort(key.begin(), key.end());
        auto it = dd_cache.find(key);
        if (it != dd_cache.end()) return it->second;
        for (std::size_t q = 0; q < key.size(); ++q)
            nodes[q] = model.a_diag[key[q]];
        double v = divdiff_exp(std::span<const double>(nodes.data(), key.size()), t);
        dd_cache.emplace(std::move(key), v);
        return v;
    };

    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            path[0] = i;
            path[static_cast<std::size_t>(n)] = j;
            double sum = 0.0;
            // odometer over interior indices
            std::vector<int> interior(static_cast<std::size_t>(std::max(0, n - 1)), 0);
            for (;;) {
                for (int q = 1; q < n; ++q) path[static_cast<std::size_t>(q)] = interior[static_cast<std::size_t>(q - 1)];
                double bprod = 1.0;
                for (int q = 0; q < n; ++q)
                    bprod *= B(path[static_cast<std::size_t>(q)], path[static_cast<std::size_t>(q + 1)]);
                if (bprod != 0.0) sum += bprod * dd_for(path);
                if (interior.empty()) break;
                int pos = static_cast<int>(interior.size()) - 1;
                while (pos >= 0 && ++interior[static_cast<std::size_t>(pos)] == d) {
                    interior[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
            out(i, j) = sum;
        }
    }
    return out;
}

namespace {

double spectral_norm_sym(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    return std::max(std::abs(es.eigenvalues().minCoeff()),
                    std::abs(es.eigenvalues().maxCoeff()));
}

Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& M, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    Eigen::VectorXd w = (-t * es.eigenvalues().array()).exp();
    return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

double expansion_residual(const MatrixModel& model, double t, int N,
                          const ContourSpec& spec) {
    Eigen::MatrixXd A = model.a_diag.asDiagonal();
    Eigen::MatrixXd target = sym_exp(A + model.B(), t);
    Eigen::MatrixXd acc = sym_exp(A, t);
    for (int n = 1; n <= N; ++n) {
        ContourSpec s = default_contour(model, n, t);
        s.node_count = spec.node_count;
        s.im_max = spec.im_max;
        acc += contour_term(model, n, t, s).value;
    }
    return spectral_norm_sym(target - acc);
}

double expansion_tail_bound(double c_norm, int N) {
    const double pref = std::exp(1.5) / kPi;
    double sum = 0.0;
    double cn = std::pow(c_norm, N + 1);
    for (int n = N + 1;; ++n) {
        const double term = pref * std::sqrt(n + 2.0) * cn;
        sum += term;
        cn *= c_norm;
        if (term < 1e-16 * sum || n > N + 10000) break;
    }
    return sum;
}

NormBoundCheck norm_bound_check(const MatrixModel& model, double t, int n,
                                const ContourSpec& spec) {
    ContourTerm term = contour_term(model, n, t, spec);
    NormBoundCheck check;
    check.lhs = spectral_norm_sym(term.value);
    check.rhs = std::exp(1.5) / kPi * std::sqrt(n + 2.0) * std::pow(model.c_norm(), n);
    check.allowance = term.quadrature_error + term.truncation_error;
    check.pass = check.lhs <= check.rhs + check.allowance;
    return check;
}

NormBoundCheck weighted_norm_bound_check(const MatrixModel& model, double t,
                                         int n, const ContourSpec& spec) {
    ContourTerm term = contour_term(model, n, t, spec);
    Eigen::VectorXd root = model.a_diag.cwiseSqrt();
    Eigen::MatrixXd weighted = root.asDiagonal() * term.value * root.asDiagonal();
    NormBoundCheck check;
    check.lhs = spectral_norm_sym(weighted);
    check.rhs = std::exp(1.0) / (kPi * t) *
                std::pow(n + 2.0, 0.5 * (n + 2.0)) /
                std::pow(n + 1.0, 0.5 * (n + 1.0)) * std::pow(model.c_norm(), n);
    const double amax = model.a_diag.maxCoeff();
    check.allowance = (term.quadrature_error + term.truncation_error) * amax;
    check.pass = check.lhs <= check.rhs + check.allowance;
    return check;
}

IdentityCheck contour_to_simplex_identity(std::span<const double> b, double t,
                                          const ContourSpec& spec) {
    for (double v : b)
        if (v <= 0.0) throw ConfigError("contour_to_simplex_identity: nodes must be > 0");
    const double y_max = spec.resolved_im_max(t);
    const double h = y_max / spec.node_count;
    Complex acc(0.0, 0.0);
    for (int k = -spec.node_count; k <= spec.node_count; ++k) {
        const double y = k * h;
        const Complex z(-spec.kappa + spec.gamma * std::abs(y), y);
        Complex dz(spec.gamma * ((y > 0) ? 1.0 : (y < 0 ? -1.0 : 0.0)), 1.0);
        if (k == 0) dz = Complex(0.0, 1.0);
        const double w = (std::abs(k) == spec.node_count) ? 0.5 : 1.0;
        Complex f = std::exp(-t * z);
        for (double node : b) f /= (z - node);
        acc += f * (-w * h) * dz;
    }
    acc /= Complex(0.0, 2.0 * kPi);

    IdentityCheck check;
    check.lhs = acc.real();
    check.rhs = simplex_exp_integral(b, t);
    check.residual = std::abs(check.lhs - check.rhs);
    return check;
}

}  // namespace polaron
