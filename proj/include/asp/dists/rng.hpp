#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace asp::dists {

// Philox4x64-10 block: 4 counter words, 2 key words.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

// Counter-based stream: key = (seed, stream_key), counter = block index.
// Two streams with different keys never share a Philox input block.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_key);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_key() const { return stream_key_; }

    std::uint64_t next_u64();
    result_type operator()() { return next_u64(); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    // Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    // Standard exponential.
    double exponential();

private:
    std::uint64_t seed_;
    std::uint64_t stream_key_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 4> buffer_{};
    int pos_ = 4;
    bool have_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace asp::dists
