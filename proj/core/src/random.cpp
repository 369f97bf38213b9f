#include "chainwish/random.hpp"

#include <cmath>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace chainwish {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

double draw_gamma(Rng& rng, double shape, double rate) {
  boost::random::gamma_distribution<double> g(shape, 1.0 / rate);
  return g(rng);
}

double draw_normal(Rng& rng, double mean, double variance) {
  boost::random::normal_distribution<double> nd(mean, std::sqrt(variance));
  return nd(rng);
}

double draw_uniform(Rng& rng, double lo, double hi) {
  boost::random::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

double draw_exponential(Rng& rng, double rate) {
  boost::random::exponential_distribution<double> e(rate);
  return e(rng);
}

}  // namespace chainwish
