#include "poolann/philox.hpp"

namespace poolann {

namespace {

constexpr std::uint32_t kMultiplier0 = 0xD2511F53u;
constexpr std::uint32_t kMultiplier1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> round_once(const std::array<std::uint32_t, 4>& ctr,
                                               const std::array<std::uint32_t, 2>& key) {
    const std::uint64_t product0 = static_cast<std::uint64_t>(kMultiplier0) * ctr[0];
    const std::uint64_t product1 = static_cast<std::uint64_t>(kMultiplier1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(product0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(product0);
    const auto hi1 = static_cast<std::uint32_t>(product1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(product1);
    return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(const std::array<std::uint32_t, 4>& counter,
                                               const std::array<std::uint32_t, 2>& key) {
    std::array<std::uint32_t, 4> state = counter;
    std::array<std::uint32_t, 2> round_key = key;
    for (int round = 0; round < 10; ++round) {
        state = round_once(state, round_key);
        round_key[0] += kWeyl0;
        round_key[1] += kWeyl1;
    }
    return state;
}

ReplicationStream::ReplicationStream(std::uint64_t seed, std::uint64_t replication)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      rep_lo_(static_cast<std::uint32_t>(replication)),
      rep_hi_(static_cast<std::uint32_t>(replication >> 32)) {}

void ReplicationStream::refill() {
    const auto words = Philox4x32::block({rep_lo_, rep_hi_, block_, 0u}, key_);
    ++block_;
    buffer_[0] = (static_cast<std::uint64_t>(words[1]) << 32) | words[0];
    buffer_[1] = (static_cast<std::uint64_t>(words[3]) << 32) | words[2];
    available_ = 2;
}

std::uint64_t ReplicationStream::next_u64() {
    if (available_ == 0) refill();
    return buffer_[2 - available_--];
}

double ReplicationStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace poolann
