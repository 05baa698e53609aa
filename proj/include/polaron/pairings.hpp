#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace polaron {

// A Wick pairing of {1..2n}: pairs (a_i, b_i) with a_i < b_i and
// a_1 < a_2 < ... < a_n.  Indices are 1-based throughout.
struct Pairing {
    std::vector<std::pair<int, int>> pairs;

    int n() const { return static_cast<int>(pairs.size()); }
    bool valid() const;
};

// Step sequence in {-1,+1} of length 2n with nonpositive prefix sums (interior)
// and zero total.
struct DyckPath {
    std::vector<int> steps;

    int n() const { return static_cast<int>(steps.size()) / 2; }
    bool valid() const;
};

// Crossing structure of a pairing: sets[j] = M_j, the pairs whose arc spans
// slot j (membership rule a_i <= j < b_i), stored as bitmasks over pair
// indices 1..n (bit i-1 <-> pair i).  toggles[j-1] is the unique pair index
// toggled between M_{j-1} and M_j.
struct CrossingTable {
    int n = 0;
    std::vector<std::uint32_t> sets;  // size 2n+1, sets[0] = sets[2n] = 0
    std::vector<int> toggles;         // size 2n, values in 1..n

    bool member(int pair_index, int j) const {
        return (sets[static_cast<std::size_t>(j)] >> (pair_index - 1)) & 1u;
    }
};

inline constexpr int kDefaultPairingCap = 6;

// All Wick pairings of {1..2n}; |result| = (2n-1)!!.  Generated by pairing the
// smallest free index with every larger free index, which emits the canonical
// order directly.
std::vector<Pairing> enumerate_pairings(int n, int cap = kDefaultPairingCap);

// True iff the associated step sequence has strictly negative partial sums for
// 1 <= l < 2n (the pairing cannot be split into two blocks).
bool is_interlacing(const Pairing& p);

// Step at slot j is -1 if j opens its pair, +1 if it closes it.
DyckPath pairing_to_dyck(const Pairing& p);

// All Dyck paths of length 2n; |result| = Catalan(n).
std::vector<DyckPath> enumerate_dyck(int n, int cap = kDefaultPairingCap);

CrossingTable crossing_table(const Pairing& p);

// Unique factorization path = {prefix, suffix} where the suffix touches zero
// only at its end (strictly negative interior sums) and the prefix is the
// remaining, possibly empty, Dyck path.
struct DyckFactorization {
    DyckPath prefix;       // may be empty
    DyckPath irreducible;  // never empty
};
DyckFactorization dyck_factorize(const DyckPath& path);

// Number of pairings for a given n, (2n-1)!!.
std::uint64_t double_factorial_odd(int n);

// n-th Catalan number.
std::uint64_t catalan(int n);

}  // namespace polaron
