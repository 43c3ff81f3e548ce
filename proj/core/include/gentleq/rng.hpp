#pragma once

#include <cstdint>

namespace gentleq {

/// Counter-based pseudo-random stream (Philox4x32-10).
///
/// Streams are keyed by a 64-bit seed and a 64-bit stream id. Distinct
/// stream ids share no counter prefix, so per-trial substreams derived
/// from (seed, trial_index) are statistically independent and need no
/// shared sequential state. Identical (seed, stream, position) always
/// reproduces the same draw, on every platform.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform01() noexcept;

    /// Standard normal via Box-Muller (second value cached).
    double gaussian() noexcept;

private:
    void generate_block() noexcept;

    std::uint32_t key_[2];
    std::uint32_t counter_[4]; // counter_[0..1] advance, [2..3] hold the stream id
    std::uint64_t buffer_[2];
    int buffered_ = 0;
    double gauss_cache_ = 0.0;
    bool has_gauss_cache_ = false;
};

/// Substream for one Monte Carlo trial: independent across trial indices,
/// identical for identical (master_seed, trial_index).
RandomStream derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) noexcept;

} // namespace gentleq
