#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "majam/channel.hpp"
#include "majam/config.hpp"
#include "majam/types.hpp"

namespace majam {

struct BsPrecoder
{
    ComplexMatrix w;  // N x K, column k serves user k
    PrecoderScheme scheme = PrecoderScheme::ZeroForcing;
    std::vector<double> power;  // per-user allocation, sums to P_BS

    double total_power() const { return w.squaredNorm(); }
};

// Zero forcing needs K linearly independent direct channels.
class RankDeficientError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Stacks h_BS,k as columns: N x K.
ComplexMatrix stack_direct_channels(std::span<const UserEnvironment> envs);

// Equal power P_BS / K per user. ZeroForcing uses the normalized columns of
// H (H^H H)^{-1}; MRT uses h_k / ||h_k||.
BsPrecoder bs_precoder(const ComplexMatrix& direct_channels, double bs_power_w, PrecoderScheme scheme);

} // namespace majam
