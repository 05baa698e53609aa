#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace polaron {

// Counter-based pseudorandom stream: every draw is a hash of (key, counter),
// so streams keyed by (seed, order, pairing, batch) are independent of
// scheduling and can be replayed from any point. SplitMix64 finalizer.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ kKeyInit)) {}

    // Derive a child stream; tags identify the task (order, pairing, batch...).
    CounterRng derive(std::initializer_list<std::uint64_t> tags) const {
        CounterRng child(*this);
        child.counter_ = 0;
        for (std::uint64_t t : tags) child.key_ = mix(child.key_ ^ mix(t + kTagSalt));
        return child;
    }

    std::uint64_t next_u64() {
        std::uint64_t c = counter_++;
        return mix(key_ ^ (c * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Standard exponential, strictly positive.
    double exponential() { return -std::log1p(-uniform()); }

    // Standard normal (Box-Muller; draws two uniforms per call pair).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        // avoid log(0)
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    static constexpr std::uint64_t kKeyInit = 0x243f6a8885a308d3ULL;
    static constexpr std::uint64_t kTagSalt = 0x452821e638d01377ULL;

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace polaron
