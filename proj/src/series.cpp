#include "polaron/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polaron/errors.hpp"
#include "polaron/numerics.hpp"
#include "polaron/parallel.hpp"
#include "polaron/rng.hpp"
#include "polaron/simplex.hpp"

namespace polaron {

namespace {

// g^{2n} by repeated multiplication (keeps power-of-two coupling rescalings
// bit-exact, which the g-scaling invariant relies on).
double coupling_power(double g, int n) {
    double gg = g * g;
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= gg;
    return r;
}

ModelSpec unit_coupling(const ModelSpec& m) {
    ModelSpec u = m;
    u.g = 1.0;
    return u;
}

int gm_subdiv_for(double t) {
    return std::clamp(static_cast<int>(std::ceil(t)), 1, 16);
}

struct PairingJob {
    CrossingTable table;
    bool interlacing = false;
};

std::vector<PairingJob> pairing_jobs(int n, int cap, bool interlacing_only) {
    std::vector<PairingJob> jobs;
    for (const Pairing& p : enumerate_pairings(n, cap)) {
        bool il = is_interlacing(p);
        if (interlacing_only && !il) continue;
        jobs.push_back({crossing_table(p), il});
    }
    return jobs;
}

// Shared machinery for the heat expansion terms and the renewal kernel.
// kind: heat -> simplex dim 2n, all pairings; kernel -> dim 2n-1, interlacing
// pairings, j = 0..2n-1 (trailing time pinned to zero).
enum class TermKind { Heat, Kernel };

OrderCurve order_curve_impl(TermKind kind, int n, const ModelSpec& m,
                            std::span<const double> us, double t,
                            const SeriesOptions& opt) {
    m.validate();
    if (n < 1) throw SizeLimitError("order_contribution: n must be >= 1");
    if (n > opt.nmax_cap)
        throw SizeLimitError("order_contribution: n exceeds nmax cap " +
                             std::to_string(opt.nmax_cap));
    const std::size_t nu = us.size();
    OrderCurve result;
    result.value.assign(nu, 0.0);
    result.std_error.assign(nu, 0.0);
    if (m.g == 0.0 || t <= 0.0) return result;

    const bool kernel = (kind == TermKind::Kernel);
    const int dim = kernel ? 2 * n - 1 : 2 * n;
    const auto jobs = pairing_jobs(n, opt.pairing_cap, kernel);
    const ModelSpec unit = unit_coupling(m);
    const double gpow = coupling_power(m.g, n);

    // times vector handed to the quadform assembler always has 2n+1 slots;
    // the kernel terms pin t_{2n} = 0.
    auto eval_times = [&](const CrossingTable& table,
                          std::span<const double> coords,
                          std::span<const double> upoints,
                          std::span<double> out) {
        if (kernel) {
            std::vector<double> full(coords.begin(), coords.end());
            full.push_back(0.0);
            momentum_integral_accumulate(table, full, unit, opt.quad, upoints, out);
        } else {
            momentum_integral_accumulate(table, coords, unit, opt.quad, upoints, out);
        }
    };

    if (dim <= 2 && opt.deterministic_low_dim) {
        SimplexRule rule = gm_rule(dim, t, opt.gm_index, gm_subdiv_for(t));
        std::vector<double> acc(nu, 0.0), tmp(nu);
        for (const auto& job : jobs) {
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                std::fill(tmp.begin(), tmp.end(), 0.0);
                eval_times(job.table, rule.nodes[q], us, tmp);
                for (std::size_t i = 0; i < nu; ++i)
                    acc[i] += rule.weights[q] * tmp[i];
            }
        }
        for (std::size_t i = 0; i < nu; ++i) result.value[i] = gpow * acc[i];
        return result;
    }

    // Monte Carlo over the simplex: tasks are (pairing, batch) pairs with
    // counter-based streams keyed by (order, pairing, batch[, u index]),
    // reduced in task order.
    const int batches = (opt.mc_count + opt.batch_size - 1) / opt.batch_size;
    const int tasks = static_cast<int>(jobs.size()) * batches;
    const double vol = simplex_volume(dim, t);
    const CounterRng base(opt.seed);

    struct Slot {
        std::vector<double> sum, sumsq;
        int count = 0;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(tasks));

    parallel_for(tasks, opt.threads, [&](int task) {
        const int pi = task / batches;
        const int batch = task % batches;
        const int lo = batch * opt.batch_size;
        const int hi = std::min(opt.mc_count, lo + opt.batch_size);
        Slot& slot = slots[static_cast<std::size_t>(task)];
        slot.sum.assign(nu, 0.0);
        slot.sumsq.assign(nu, 0.0);
        slot.count = hi - lo;
        std::vector<double> tmp(nu);
        std::vector<std::vector<double>> samples;
        if (opt.independent_u_streams) {
            for (std::size_t iu = 0; iu < nu; ++iu) {
                CounterRng rng = base.derive({static_cast<std::uint64_t>(n),
                                              static_cast<std::uint64_t>(pi),
                                              static_cast<std::uint64_t>(batch),
                                              static_cast<std::uint64_t>(iu) + 101});
                samples.clear();
                simplex_samples_into(dim, t, hi - lo, rng, samples);
                const double upoint[1] = {us[iu]};
                for (const auto& coords : samples) {
                    double val[1] = {0.0};
                    eval_times(jobs[static_cast<std::size_t>(pi)].table, coords,
                               upoint, val);
                    slot.sum[iu] += val[0];
                    slot.sumsq[iu] += val[0] * val[0];
                }
            }
        } else {
            CounterRng rng = base.derive({static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(pi),
                                          static_cast<std::uint64_t>(batch)});
            simplex_samples_into(dim, t, hi - lo, rng, samples);
            for (const auto& coords : samples) {
                std::fill(tmp.begin(), tmp.end(), 0.0);
                eval_times(jobs[static_cast<std::size_t>(pi)].table, coords, us, tmp);
                for (std::size_t i = 0; i < nu; ++i) {
                    slot.sum[i] += tmp[i];
                    slot.sumsq[i] += tmp[i] * tmp[i];
                }
            }
        }
    });

    // deterministic reduction: accumulate per pairing over batches, in order
    for (int pi = 0; pi < static_cast<int>(jobs.size()); ++pi) {
        std::vector<double> sum(nu, 0.0), sumsq(nu, 0.0);
        int count = 0;
        for (int b = 0; b < batches; ++b) {
            const Slot& slot = slots[static_cast<std::size_t>(pi * batches + b)];
            for (std::size_t i = 0; i < nu; ++i) {
                sum[i] += slot.sum[i];
                sumsq[i] += slot.sumsq[i];
            }
            count += slot.count;
        }
        for (std::size_t i = 0; i < nu; ++i) {
            const double mean = sum[i] / count;
            const double var =
                std::max(0.0, sumsq[i] / count - mean * mean) / std::max(1, count - 1);
            result.value[i] += gpow * vol * mean;
            result.std_error[i] = std::hypot(result.std_error[i],
                                             gpow * vol * std::sqrt(var));
        }
    }
    return result;
}

std::vector<SeriesEstimate> estimates_impl(TermKind kind, const ModelSpec& m,
                                           std::span<const double> us, double tor_s,
                                           const SeriesOptions& opt) {
    if (opt.nmax < 1 || opt.nmax > opt.nmax_cap)
        throw SizeLimitError("series: nmax out of range");
    const std::size_t nu = us.size();
    std::vector<SeriesEstimate> out(nu);
    for (std::size_t i = 0; i < nu; ++i) {
        if (kind == TermKind::Heat) {
            out[i].value = std::exp(-tor_s * us[i]);
        }
        out[i].truncation_order = opt.nmax;
    }
    for (int n = 1; n <= opt.nmax; ++n) {
        OrderCurve c = order_curve_impl(kind, n, m, us, tor_s, opt);
        for (std::size_t i = 0; i < nu; ++i) {
            out[i].per_order.push_back({n, c.value[i], c.std_error[i]});
            out[i].value += c.value[i];
            out[i].std_error = std::hypot(out[i].std_error, c.std_error[i]);
            out[i].truncation_hint = std::abs(c.value[i]);
        }
    }
    return out;
}

}  // namespace

OrderCurve order_contribution_curve(int n, const ModelSpec& m,
                                    std::span<const double> us, double t,
                                    const SeriesOptions& opt) {
    return order_curve_impl(TermKind::Heat, n, m, us, t, opt);
}

SeriesEstimate::Order order_contribution(int n, const ModelSpec& m, double u,
                                         double t, const SeriesOptions& opt) {
    const double us[1] = {u};
    OrderCurve c = order_curve_impl(TermKind::Heat, n, m, us, t, opt);
    return {n, c.value[0], c.std_error[0]};
}

std::vector<SeriesEstimate> heat_estimates(const ModelSpec& m,
                                           std::span<const double> us, double t,
                                           const SeriesOptions& opt) {
    return estimates_impl(TermKind::Heat, m, us, t, opt);
}

SeriesEstimate heat_value(const ModelSpec& m, double u, double t,
                          const SeriesOptions& opt) {
    const double us[1] = {u};
    return heat_estimates(m, us, t, opt)[0];
}

HeatCurve heat_curve(const ModelSpec& m, std::span<const double> us, double t,
                     const SeriesOptions& opt) {
    HeatCurve curve;
    curve.t = t;
    auto est = heat_estimates(m, us, t, opt);
    curve.samples.reserve(us.size());
    for (std::size_t i = 0; i < us.size(); ++i)
        curve.samples.push_back({us[i], est[i].value, est[i].std_error});
    return curve;
}

SeriesEstimate renewal_kernel(const ModelSpec& m, double u, double s,
                              const SeriesOptions& opt) {
    if (s <= 0.0) throw ConfigError("renewal_kernel: s must be > 0");
    const double us[1] = {u};
    return estimates_impl(TermKind::Kernel, m, us, s, opt)[0];
}

RenewalReport renewal_residual(const ModelSpec& m, double u, double t,
                               int grid_count, const SeriesOptions& opt) {
    if (grid_count < 8) throw ConfigError("renewal_residual: grid_count must be >= 8");
    if (grid_count % 2 != 0) throw ConfigError("renewal_residual: grid_count must be even");
    const int G = grid_count;
    const double h = t / G;
    const int N = opt.nmax;

    // F estimates at t - s_i and K estimates at s_i, per order.
    // index i = 0..G corresponds to s_i = i h.
    std::vector<SeriesEstimate> F(static_cast<std::size_t>(G) + 1);
    std::vector<SeriesEstimate> K(static_cast<std::size_t>(G) + 1);
    const double us[1] = {u};
    for (int i = 0; i <= G; ++i) {
        const double s = i * h;
        const double rem = t - s;
        if (rem > 0.0) {
            F[static_cast<std::size_t>(i)] = heat_value(m, u, rem, opt);
        } else {
            F[static_cast<std::size_t>(i)].value = 1.0;  // semigroup at t = 0
            F[static_cast<std::size_t>(i)].per_order.assign(
                static_cast<std::size_t>(N), SeriesEstimate::Order{});
        }
        if (s > 0.0) {
            K[static_cast<std::size_t>(i)] = estimates_impl(TermKind::Kernel, m, us, s, opt)[0];
        } else {
            K[static_cast<std::size_t>(i)].per_order.assign(
                static_cast<std::size_t>(N), SeriesEstimate::Order{});
        }
    }

    auto trap_weight = [&](int i, int stride) {
        return (i == 0 || i == G) ? 0.5 * h * stride : h * stride;
    };

    // full convolution, fine and half grids
    double conv = 0.0, conv_half = 0.0;
    double var_conv = 0.0;
    for (int i = 0; i <= G; ++i) {
        const auto& Fi = F[static_cast<std::size_t>(i)];
        const auto& Ki = K[static_cast<std::size_t>(i)];
        const double w = trap_weight(i, 1);
        conv += w * Fi.value * Ki.value;
        var_conv += w * w *
                    (Fi.value * Fi.value * Ki.std_error * Ki.std_error +
                     Ki.value * Ki.value * Fi.std_error * Fi.std_error);
        if (i % 2 == 0) {
            const double w2 = (i == 0 || i == G) ? h : 2.0 * h;
            conv_half += w2 * Fi.value * Ki.value;
        }
    }

    // cross-terms of total order > N with both factors available: the leading
    // truncation content of the matched-order identity.
    // per-order F: order 0 is e^{-u (t-s)}.
    auto f_order = [&](int i, int mo) -> double {
        if (mo == 0) {
            const double rem = t - i * h;
            return rem > 0.0 ? std::exp(-u * rem) : 1.0;
        }
        return F[static_cast<std::size_t>(i)].per_order[static_cast<std::size_t>(mo - 1)].contribution;
    };
    double cross = 0.0;
    for (int i = 0; i <= G; ++i) {
        double local = 0.0;
        for (int mo = 0; mo <= N; ++mo)
            for (int no = 1; no <= N; ++no) {
                if (mo + no <= N) continue;
                local += f_order(i, mo) *
                         K[static_cast<std::size_t>(i)].per_order[static_cast<std::size_t>(no - 1)].contribution;
            }
        cross += trap_weight(i, 1) * local;
    }

    RenewalReport rep;
    rep.grid_count = G;
    const auto& Ft = F[0];
    rep.residual = std::abs(Ft.value - std::exp(-t * u) - conv);
    rep.mc_error = 3.0 * std::hypot(Ft.std_error, std::sqrt(var_conv));
    rep.quadrature_error = std::abs(conv - conv_half);
    rep.truncation_estimate = std::abs(cross);
    return rep;
}

GroundEnergy ground_energy(const ModelSpec& m, double u, const TWindow& window,
                           const SeriesOptions& opt) {
    if (window.count < 2 || window.t_min <= 0.0 || window.t_max <= window.t_min)
        throw ConfigError("ground_energy: bad t window");
    std::vector<double> ts(static_cast<std::size_t>(window.count));
    for (int i = 0; i < window.count; ++i)
        ts[static_cast<std::size_t>(i)] =
            window.t_min + (window.t_max - window.t_min) * i / (window.count - 1);
    std::vector<double> neg_log_f(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        SeriesEstimate est = heat_value(m, u, ts[i], opt);
        if (!(est.value > 0.0))
            throw WindowError("ground_energy: nonpositive series value at t = " +
                              std::to_string(ts[i]));
        if (i + 1 == ts.size() && est.truncation_hint > opt.trunc_fraction * est.value)
            throw WindowError(
                "ground_energy: truncation dominates at t_max (hint " +
                std::to_string(est.truncation_hint) + " > " +
                std::to_string(opt.trunc_fraction) + " * value " +
                std::to_string(est.value) + "); shrink the window or raise nmax");
        neg_log_f[i] = -std::log(est.value);
    }
    LineFit fit = fit_line(ts, neg_log_f);
    return {fit.slope, fit.max_residual};
}

EnergyCurve ground_energy_curve(const ModelSpec& m, std::span<const double> us,
                                const TWindow& window, const SeriesOptions& opt) {
    EnergyCurve curve;
    curve.samples.reserve(us.size());
    for (double u : us) {
        GroundEnergy e = ground_energy(m, u, window, opt);
        curve.samples.push_back({u, e.E0, e.fit_residual});
    }
    return curve;
}

namespace {

MonotonicityReport differences_report(std::span<const double> F,
                                      std::span<const double> se, int max_order) {
    MonotonicityReport rep;
    const std::size_t nu = F.size();
    std::vector<double> diff(F.begin(), F.end());
    std::vector<double> var(nu);
    for (std::size_t i = 0; i < nu; ++i) var[i] = se[i] * se[i];
    for (int j = 1; j <= max_order; ++j) {
        if (diff.size() < 2) break;
        std::vector<double> next(diff.size() - 1);
        std::vector<double> nvar(diff.size() - 1);
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) {
            next[i] = diff[i + 1] - diff[i];
            nvar[i] = var[i + 1] + var[i];
        }
        diff = std::move(next);
        var = std::move(nvar);
        MonotonicityReport::OrderCheck check;
        check.order = j;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i < diff.size(); ++i) {
            const double defect = -sign * diff[i];  // positive when violating
            const double floor3 = 3.0 * std::sqrt(var[i]);
            check.worst_violation = std::max(check.worst_violation, defect);
            check.noise_floor = std::max(check.noise_floor, floor3);
        }
        // pass if every sign-adjusted difference is >= -noise floor
        check.pass = true;
        for (std::size_t i = 0; i < diff.size(); ++i) {
            const double defect = -sign * diff[i];
            if (defect > 3.0 * std::sqrt(var[i])) check.pass = false;
        }
        rep.orders.push_back(check);
        rep.pass = rep.pass && check.pass;
    }
    return rep;
}

}  // namespace

MonotonicityReport monotonicity_check(const ModelSpec& m, double t,
                                      std::span<const double> u_grid,
                                      int max_order, const SeriesOptions& opt) {
    if (u_grid.size() < static_cast<std::size_t>(max_order) + 1)
        throw ConfigError("monotonicity_check: grid too short for requested order");
    SeriesOptions o = opt;
    o.independent_u_streams = true;
    auto est = heat_estimates(m, u_grid, t, o);
    std::vector<double> F(est.size()), se(est.size());
    for (std::size_t i = 0; i < est.size(); ++i) {
        F[i] = est[i].value;
        se[i] = est[i].std_error;
    }
    return differences_report(F, se, max_order);
}

MonotonicityReport monotonicity_check_mixture(const ModelSpec& m, double t,
                                              std::span<const double> u_grid,
                                              int max_order,
                                              const SeriesOptions& opt) {
    if (u_grid.size() < static_cast<std::size_t>(max_order) + 1)
        throw ConfigError("monotonicity_check: grid too short for requested order");
    SeriesOptions o = opt;
    o.independent_u_streams = false;  // shared samples: F is a positive mixture
    auto est = heat_estimates(m, u_grid, t, o);
    std::vector<double> F(est.size());
    for (std::size_t i = 0; i < est.size(); ++i) F[i] = est[i].value;
    // roundoff floor instead of statistical floor
    std::vector<double> se(est.size());
    for (std::size_t i = 0; i < est.size(); ++i)
        se[i] = 1e-13 * std::max(1.0, std::abs(F[i])) / 3.0;
    return differences_report(F, se, max_order);
}

ConcavityReport concavity_check(const EnergyCurve& curve) {
    const auto& s = curve.samples;
    if (s.size() < 3) throw ConfigError("concavity_check: need >= 3 samples");
    for (std::size_t i = 2; i < s.size(); ++i) {
        const double step1 = s[i - 1].u - s[i - 2].u;
        const double step2 = s[i].u - s[i - 1].u;
        if (std::abs(step1 - step2) > 1e-9 * std::max(step1, step2))
            throw ConfigError("concavity_check: u grid must be uniform");
    }
    ConcavityReport rep;
    rep.worst_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double d2 = s[i + 1].E0 - 2.0 * s[i].E0 + s[i - 1].E0;
        const double tol =
            3.0 * std::sqrt(s[i - 1].fit_residual * s[i - 1].fit_residual +
                            4.0 * s[i].fit_residual * s[i].fit_residual +
                            s[i + 1].fit_residual * s[i + 1].fit_residual);
        const double excess = d2 - tol;
        if (excess > rep.worst_excess) {
            rep.worst_excess = excess;
            rep.worst_second_diff = d2;
            rep.worst_tolerance = tol;
            rep.worst_index = i;
        }
        if (d2 > tol) rep.pass = false;
    }
    return rep;
}

}  // namespace polaron
