#pragma once

#include <cstdint>
#include <limits>

namespace mgof::num {

// xoshiro256** seeded through splitmix64. Every distribution below is
// implemented here so draws are identical across platforms and standard
// libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0);
    // Independent stream for (master seed, stream id), e.g. one per replication.
    static Rng child(std::uint64_t master, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    double uniform();                       // [0, 1), 53 random bits
    double uniform(double lo, double hi);   // [lo, hi)
    std::uint64_t below(std::uint64_t n);   // uniform on {0, ..., n-1}
    double normal();                        // standard normal
    int bernoulli(double p);                // throws std::invalid_argument if p outside [0, 1]

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace mgof::num
