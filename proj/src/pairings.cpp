#include "polaron/pairings.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "polaron/errors.hpp"

namespace polaron {

bool Pairing::valid() const {
    const int N = 2 * n();
    std::vector<char> seen(static_cast<std::size_t>(N) + 1, 0);
    int prev_a = 0;
    for (const auto& [a, b] : pairs) {
        if (a < 1 || b > N || a >= b) return false;
        if (a <= prev_a) return false;  // openers strictly increasing
        if (seen[a] || seen[b]) return false;
        seen[a] = seen[b] = 1;
        prev_a = a;
    }
    return true;
}

bool DyckPath::valid() const {
    const int N = static_cast<int>(steps.size());
    if (N == 0 || N % 2 != 0) return false;
    int sum = 0;
    for (int j = 0; j < N; ++j) {
        if (steps[j] != 1 && steps[j] != -1) return false;
        sum += steps[j];
        if (j < N - 1 && sum > 0) return false;
    }
    return sum == 0;
}

namespace {

void check_cap(int n, int cap, const char* what) {
    if (n < 1) throw SizeLimitError(std::string(what) + ": n must be >= 1");
    if (n > cap)
        throw SizeLimitError(std::string(what) + ": n = " + std::to_string(n) +
                             " exceeds cap " + std::to_string(cap) +
                             " ((2n-1)!! growth)");
    if (n > 15) throw SizeLimitError(std::string(what) + ": n > 15 not representable");
}

void gen_pairings(std::uint32_t free_mask, int total, Pairing& acc,
                  std::vector<Pairing>& out) {
    if (free_mask == 0) {
        out.push_back(acc);
        return;
    }
    int a = std::countr_zero(free_mask) + 1;
    std::uint32_t rest = free_mask & ~(1u << (a - 1));
    for (int b = a + 1; b <= total; ++b) {
        if (!((rest >> (b - 1)) & 1u)) continue;
        acc.pairs.emplace_back(a, b);
        gen_pairings(rest & ~(1u << (b - 1)), total, acc, out);
        acc.pairs.pop_back();
    }
}

}  // namespace

std::vector<Pairing> enumerate_pairings(int n, int cap) {
    check_cap(n, cap, "enumerate_pairings");
    std::vector<Pairing> out;
    out.reserve(double_factorial_odd(n));
    Pairing acc;
    acc.pairs.reserve(static_cast<std::size_t>(n));
    gen_pairings((1u << (2 * n)) - 1u, 2 * n, acc, out);
    return out;
}

bool is_interlacing(const Pairing& p) {
    const int N = 2 * p.n();
    std::vector<int> step(static_cast<std::size_t>(N) + 1, 0);
    for (const auto& [a, b] : p.pairs) {
        step[a] = -1;
        step[b] = +1;
    }
    int sum = 0;
    for (int j = 1; j < N; ++j) {
        sum += step[j];
        if (sum >= 0) return false;
    }
    return true;
}

DyckPath pairing_to_dyck(const Pairing& p) {
    const int N = 2 * p.n();
    DyckPath d;
    d.steps.assign(static_cast<std::size_t>(N), 0);
    for (const auto& [a, b] : p.pairs) {
        d.steps[a - 1] = -1;
        d.steps[b - 1] = +1;
    }
    return d;
}

namespace {

void gen_dyck(int remaining, int height, DyckPath& acc, std::vector<DyckPath>& out) {
    if (remaining == 0) {
        if (height == 0) out.push_back(acc);
        return;
    }
    // -1 step viable iff the path can still climb back to 0
    if (-(height - 1) <= remaining - 1) {
        acc.steps.push_back(-1);
        gen_dyck(remaining - 1, height - 1, acc, out);
        acc.steps.pop_back();
    }
    // +1 step: prefix sums stay <= 0 (the final return to 0 satisfies this too)
    if (height + 1 <= 0) {
        acc.steps.push_back(+1);
        gen_dyck(remaining - 1, height + 1, acc, out);
        acc.steps.pop_back();
    }
}

}  // namespace

std::vector<DyckPath> enumerate_dyck(int n, int cap) {
    check_cap(n, cap, "enumerate_dyck");
    std::vector<DyckPath> out;
    out.reserve(catalan(n));
    DyckPath acc;
    acc.steps.reserve(static_cast<std::size_t>(2 * n));
    gen_dyck(2 * n, 0, acc, out);
    return out;
}

CrossingTable crossing_table(const Pairing& p) {
    const int n = p.n();
    const int N = 2 * n;
    CrossingTable t;
    t.n = n;
    t.sets.assign(static_cast<std::size_t>(N) + 1, 0u);
    t.toggles.assign(static_cast<std::size_t>(N), 0);
    for (int j = 0; j <= N; ++j) {
        std::uint32_t m = 0;
        for (int i = 0; i < n; ++i) {
            const auto& [a, b] = p.pairs[static_cast<std::size_t>(i)];
            if (a <= j && j < b) m |= (1u << i);
        }
        t.sets[static_cast<std::size_t>(j)] = m;
    }
    for (int i = 0; i < n; ++i) {
        const auto& [a, b] = p.pairs[static_cast<std::size_t>(i)];
        t.toggles[static_cast<std::size_t>(a - 1)] = i + 1;
        t.toggles[static_cast<std::size_t>(b - 1)] = i + 1;
    }
    return t;
}

DyckFactorization dyck_factorize(const DyckPath& path) {
    const int N = static_cast<int>(path.steps.size());
    int sum = 0;
    int last_zero = 0;  // last interior return to the origin
    for (int j = 0; j < N - 1; ++j) {
        sum += path.steps[static_cast<std::size_t>(j)];
        if (sum == 0) last_zero = j + 1;
    }
    DyckFactorization f;
    f.prefix.steps.assign(path.steps.begin(), path.steps.begin() + last_zero);
    f.irreducible.steps.assign(path.steps.begin() + last_zero, path.steps.end());
    return f;
}

std::uint64_t double_factorial_odd(int n) {
    std::uint64_t r = 1;
    for (int k = 3; k <= 2 * n - 1; k += 2) r *= static_cast<std::uint64_t>(k);
    return r;
}

std::uint64_t catalan(int n) {
    std::uint64_t r = 1;
    for (int k = 0; k < n; ++k)
        r = r * static_cast<std::uint64_t>(2 * (2 * k + 1)) / static_cast<std::uint64_t>(k + 2);
    return r;
}

}  // namespace polaron
