#pragma once

#include <cmath>
#include <cstdint>

namespace abcmeta {

// Counter-based generator (Philox 4x32, 10 rounds). A stream is fully
// determined by (seed, stream id); draws never depend on how work was split
// across threads, which is what makes whole runs reproducible bit for bit.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)) {
        ctr_[0] = 0;
        ctr_[1] = 0;
        ctr_[2] = static_cast<std::uint32_t>(stream);
        ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    std::uint32_t next_u32() noexcept {
        if (pos_ == 4) {
            fill_block();
            pos_ = 0;
        }
        return out_[pos_++];
    }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Strictly inside (0, 1): 53-bit mantissa, offset by half an ulp.
    double uniform01() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform01();
    }

    // Box-Muller; the second variate of each pair is cached.
    double normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                        std::uint32_t& lo) noexcept {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    void fill_block() noexcept {
        constexpr std::uint32_t kM0 = 0xD2511F53u;
        constexpr std::uint32_t kM1 = 0xCD9E8D57u;
        constexpr std::uint32_t kW0 = 0x9E3779B9u;
        constexpr std::uint32_t kW1 = 0xBB67AE85u;

        std::uint32_t c0 = ctr_[0], c1 = ctr_[1], c2 = ctr_[2], c3 = ctr_[3];
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(kM0, c0, hi0, lo0);
            mulhilo(kM1, c2, hi1, lo1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
            k0 += kW0;
            k1 += kW1;
        }
        out_[0] = c0;
        out_[1] = c1;
        out_[2] = c2;
        out_[3] = c3;
        // Block counter occupies the low two words; the stream id in the high
        // words is never touched (2^64 blocks per stream).
        if (++ctr_[0] == 0) ++ctr_[1];
    }

    std::uint32_t key0_, key1_;
    std::uint32_t ctr_[4];
    std::uint32_t out_[4] = {0, 0, 0, 0};
    int pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace abcmeta
