#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each call
// is a pure function of (counter, key), so a draw keyed by
// (seed, trial, kick) is the same whatever order trials run in.

#include <array>
#include <cstdint>

namespace needle {

class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr Counter generate(Counter ctr, Key key)
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            ctr = single_round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter single_round(const Counter& c, const Key& k)
    {
        const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

// Four uniform doubles in (0, 1) for one (seed, trial, kick, stream) tuple.
struct UniformBlock {
    double u[4];
};

inline UniformBlock uniform_block(std::uint64_t seed, std::uint64_t trial, std::uint32_t kick,
                                  std::uint32_t stream)
{
    const Philox4x32::Counter ctr{kick, stream, static_cast<std::uint32_t>(trial),
                                  static_cast<std::uint32_t>(trial >> 32)};
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                              static_cast<std::uint32_t>(seed >> 32)};
    const auto r = Philox4x32::generate(ctr, key);
    UniformBlock out{};
    for (int i = 0; i < 4; ++i) {
        // 32-bit word -> open interval (0, 1); the half-ulp offset keeps
        // log(u) finite.
        out.u[i] = (static_cast<double>(r[i]) + 0.5) * 0x1p-32;
    }
    return out;
}

}  // namespace needle
