#include "tgrand/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tgrand {

void validate_params(const ChannelParams& params) {
    if (!(params.p01 > 0.0 && params.p01 < 1.0))
        throw std::invalid_argument("channel: p01 must lie in (0, 1), got " +
                                    std::to_string(params.p01));
    if (!(params.p10 > 0.0 && params.p10 < 1.0))
        throw std::invalid_argument("channel: p10 must lie in (0, 1), got " +
                                    std::to_string(params.p10));
}

ChannelParams params_from_stats(double epsilon, double lambda) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("channel: epsilon must lie in (0, 1), got " +
                                    std::to_string(epsilon));
    if (!(lambda >= 1.0))
        throw std::invalid_argument("channel: lambda must be >= 1, got " +
                                    std::to_string(lambda));
    ChannelParams p{epsilon / (lambda * (1.0 - epsilon)), 1.0 / lambda};
    validate_params(p);
    return p;
}

ChannelStats derived_stats(const ChannelParams& params) {
    validate_params(params);
    return ChannelStats{params.p01 / (params.p01 + params.p10), 1.0 / params.p10,
                        1.0 - params.p10 - params.p01};
}

BitVector generate_error_row(const ChannelParams& params, std::size_t bits, RngStream& rng) {
    if (bits == 0) throw std::invalid_argument("generate_error_row: bits must be >= 1");
    BitVector row(bits);
    bool bad = false;  // chain starts in state 0
    for (std::size_t b = 0; b < bits; ++b) {
        const double u = rng.next_double();
        bad = bad ? !(u < params.p10) : (u < params.p01);
        if (bad) row.set(b, true);
    }
    return row;
}

BitMatrix generate_error_matrix(const ChannelParams& params, std::size_t n, std::size_t b,
                                RngStream& rng) {
    validate_params(params);
    if (n == 0 || b == 0)
        throw std::invalid_argument("generate_error_matrix: N and B must be >= 1");
    BitMatrix e(n, b);
    for (std::size_t i = 0; i < n; ++i) e.set_row(i, generate_error_row(params, b, rng));
    return e;
}

double expected_zeros_at_step(const ChannelParams& params, std::size_t n, std::size_t b) {
    validate_params(params);
    const ChannelStats s = derived_stats(params);
    return static_cast<double>(n) *
           (1.0 - s.epsilon * (1.0 - std::pow(s.mu, static_cast<double>(b))));
}

}  // namespace tgrand
