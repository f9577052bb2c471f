#ifndef POLARSIFT_RNG_HPP
#define POLARSIFT_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace polarsift {

// splitmix64 mixing step; also used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic sub-stream seed from (seed, a, b). Used so per-sample work
// (augmentation draws, per-frame renders) is order- and thread-independent.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9E3779B97F4A7C15ULL;
    h ^= splitmix64(s);
    s ^= b + 0xD1B54A32D192ED03ULL;
    h ^= splitmix64(s);
    return h;
}

// xoshiro256++ generator. Chosen over std::mt19937 because the state is four
// words (serialized verbatim into checkpoints) and all derived distributions
// below are fully specified here, so sequences are identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    static Rng from_state(const std::array<std::uint64_t, 4>& state) {
        Rng r;
        r.state_ = state;
        return r;
    }

    const std::array<std::uint64_t, 4>& state() const { return state_; }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1), 53-bit resolution
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [lo, hi] inclusive
    long long uniform_int(long long lo, long long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(next() % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller, cosine branch only; stateless beyond the counter so the
    // checkpointed state fully determines the sequence.
    double normal() {
        const double u1 = 1.0 - uniform();  // (0,1], keeps log finite
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace polarsift

#endif
