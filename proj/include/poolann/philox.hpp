#pragma once

#include <array>
#include <cstdint>

namespace poolann {

// Philox4x32-10 counter-based generator. Pure function of (key, counter), so
// any replication can be generated independently of all others.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key);
};

// Random stream for one replication: key = seed, counter = (replication,
// block index). Serial and parallel runs that touch the same replication see
// identical values.
class ReplicationStream {
public:
    ReplicationStream(std::uint64_t seed, std::uint64_t replication);

    std::uint64_t next_u64();
    double next_double();  // uniform in [0, 1), 53-bit

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint32_t rep_lo_;
    std::uint32_t rep_hi_;
    std::uint32_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int available_ = 0;
};

}  // namespace poolann
