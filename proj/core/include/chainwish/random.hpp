#pragma once

// Reproducible random streams. A (seed, stream) pair always yields the same
// sequence, so Monte Carlo work split into streams reduces to the same
// numbers however the streams are scheduled. Distributions come from
// Boost.Random because the <random> ones differ between standard libraries.

#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace chainwish {

using Rng = boost::random::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0);

// Gamma(shape, rate) and Normal(mean, variance) draws.
double draw_gamma(Rng& rng, double shape, double rate);
double draw_normal(Rng& rng, double mean, double variance);
double draw_uniform(Rng& rng, double lo, double hi);
double draw_exponential(Rng& rng, double rate);

}  // namespace chainwish
