#pragma once

#include <cstdint>
#include <random>

namespace majam {

using Rng = std::mt19937_64;

// Child stream for one Monte-Carlo realization. The seed sequence is built
// from (master, index, stream) split into 32-bit words, so realization i sees
// the same draws no matter which worker runs it or in what order.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t index, std::uint32_t stream = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream};
    return Rng(seq);
}

} // namespace majam
