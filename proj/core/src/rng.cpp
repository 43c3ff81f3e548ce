#include "gentleq/rng.hpp"

#include <cmath>

namespace gentleq {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) noexcept {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t out0 = hi1 ^ ctr[1] ^ key[0];
    const std::uint32_t out1 = lo1;
    const std::uint32_t out2 = hi0 ^ ctr[3] ^ key[1];
    const std::uint32_t out3 = lo0;
    ctr[0] = out0;
    ctr[1] = out1;
    ctr[2] = out2;
    ctr[3] = out3;
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    counter_[0] = 0;
    counter_[1] = 0;
    counter_[2] = static_cast<std::uint32_t>(stream_id);
    counter_[3] = static_cast<std::uint32_t>(stream_id >> 32);
    buffer_[0] = buffer_[1] = 0;
}

void RandomStream::generate_block() noexcept {
    std::uint32_t ctr[4] = {counter_[0], counter_[1], counter_[2], counter_[3]};
    std::uint32_t key[2] = {key_[0], key_[1]};
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    buffer_[0] = (static_cast<std::uint64_t>(ctr[1]) << 32) | ctr[0];
    buffer_[1] = (static_cast<std::uint64_t>(ctr[3]) << 32) | ctr[2];
    buffered_ = 2;
    // 64-bit block counter with carry
    if (++counter_[0] == 0) ++counter_[1];
}

std::uint64_t RandomStream::next_u64() noexcept {
    if (buffered_ == 0) generate_block();
    return buffer_[--buffered_];
}

double RandomStream::uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() noexcept {
    if (has_gauss_cache_) {
        has_gauss_cache_ = false;
        return gauss_cache_;
    }
    // u1 in (0,1] keeps the log finite
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    gauss_cache_ = radius * std::sin(angle);
    has_gauss_cache_ = true;
    return radius * std::cos(angle);
}

RandomStream derive_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    return RandomStream(master_seed, trial_index);
}

} // namespace gentleq
