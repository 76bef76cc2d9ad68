#pragma once

#include <cstddef>

#include "tgrand/gf2.hpp"
#include "tgrand/rng.hpp"

namespace tgrand {

/// Two-state burst-error channel: state 0 receives a bit correctly, state 1
/// flips it. p01 is the 0->1 transition probability, p10 the 1->0 one.
/// Boundary values are excluded so every error pattern has positive
/// probability.
struct ChannelParams {
    double p01;
    double p10;
};

/// Derived channel statistics: bit error probability, mean burst length and
/// channel memory.
struct ChannelStats {
    double epsilon;  // p01 / (p01 + p10)
    double lambda;   // 1 / p10
    double mu;       // 1 - p10 - p01, in (-1, 1)
};

/// Throws std::invalid_argument unless 0 < p01 < 1 and 0 < p10 < 1.
void validate_params(const ChannelParams& params);

/// Inverts (epsilon, lambda) to transition probabilities:
/// p01 = epsilon / (lambda (1 - epsilon)), p10 = 1 / lambda.
ChannelParams params_from_stats(double epsilon, double lambda);

ChannelStats derived_stats(const ChannelParams& params);

/// N x B error matrix: row i is an independent realization of the two-state
/// chain started in state 0, one transition per bit position.
BitMatrix generate_error_matrix(const ChannelParams& params, std::size_t n, std::size_t b,
                                RngStream& rng);

/// Single error row: one chain run for `bits` steps from state 0.
BitVector generate_error_row(const ChannelParams& params, std::size_t bits, RngStream& rng);

/// Closed-form expected number of chains (out of N, all started in state 0)
/// that are in state 0 after b steps: N (1 - eps (1 - mu^b)).
double expected_zeros_at_step(const ChannelParams& params, std::size_t n, std::size_t b);

}  // namespace tgrand
