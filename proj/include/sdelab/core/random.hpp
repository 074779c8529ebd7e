#pragma once

#include <array>
#include <concepts>
#include <cstdint>

namespace sdelab {

/// Philox4x32-10 block function (Salmon et al., SC'11).
///
/// Pure function of (counter, key); used as the source of every random
/// draw so that a draw is addressable by (seed, stream, position).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// 64-bit finalizer used to derive sub-stream identifiers.
std::uint64_t splitmix64(std::uint64_t x);

/// Anything that can hand out standard normal draws one at a time.
template <typename S>
concept NormalSource = requires(S s) {
    { s.normal() } -> std::convertible_to<double>;
};

/// Reproducible stream of N(0,1) variates.
///
/// The counter is (position, stream_id) and the key is the seed, so distinct
/// stream ids never share a counter value. Copying a stream copies its
/// position; two copies produce the same sequence.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, std::uint64_t stream_id);

    double normal();
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();

    /// Independent child stream, e.g. one per Monte Carlo path.
    GaussianStream substream(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    /// Number of Philox blocks consumed so far.
    std::uint64_t position() const { return block_; }

private:
    std::array<std::uint32_t, 4> next_block();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Source that always returns zero; turns stochastic constructions into
/// their deterministic skeleton.
struct ZeroNormalSource {
    double normal() { return 0.0; }
};

}  // namespace sdelab
