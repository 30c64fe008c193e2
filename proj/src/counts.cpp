#include "edgediff/counts.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/poisson_distribution.hpp>
#include <cmath>
#include <string>

#include "edgediff/errors.hpp"
#include "edgediff/parallel.hpp"

namespace edgediff {

namespace {

// 2^63 - 1 is not representable; 2^63 is the first double above it.
constexpr double kMaxMean = 9223372036854775808.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_rate(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(name) + " must be finite and >= 0");
  }
}

enum Channel : std::uint64_t { kCoincidence = 0, kSingles1 = 1, kSingles2 = 2 };

}  // namespace

void CountingConfig::validate() const {
  check_rate(pair_rate_scale, "pair_rate_scale");
  check_rate(accidental_rate, "accidental_rate");
  check_rate(singles_rate_1, "singles_rate_1");
  check_rate(singles_rate_2_scale, "singles_rate_2_scale");
  if (!std::isfinite(integration_time) || !(integration_time > 0.0)) {
    throw DomainError("integration_time must be positive");
  }
}

std::int64_t poisson_draw(double mean, std::uint64_t seed, std::uint64_t index,
                          std::uint64_t channel) {
  if (!std::isfinite(mean) || mean < 0.0) {
    throw DomainError("Poisson mean must be finite and >= 0");
  }
  if (mean >= kMaxMean) {
    throw RangeError("Poisson mean exceeds 2^63 - 1 counts");
  }
  if (mean == 0.0) return 0;
  const std::uint64_t key =
      splitmix64(splitmix64(seed) ^ splitmix64(index * 3 + channel + 1));
  boost::random::mt19937_64 engine(key);
  boost::random::poisson_distribution<std::int64_t, double> dist(mean);
  return dist(engine);
}

std::vector<CountsRecord> simulate_counts(const EdgePattern& pattern,
                                          const SinglesCurve& singles,
                                          const CountingConfig& cfg) {
  cfg.validate();
  if (pattern.edge_positions != singles.edge_positions) {
    throw DomainError("pattern and singles must share the edge grid");
  }
  const auto p12 = pattern.normalized();
  const auto s2 = singles.s2_normalized();
  const double T = cfg.integration_time;

  std::vector<CountsRecord> out(p12.size());
  detail::parallel_for(p12.size(), [&](std::size_t i) {
    const double coincidence_mean =
        T * (cfg.pair_rate_scale * p12[i] + cfg.accidental_rate);
    out[i] = {
        .edge_position = pattern.edge_positions[i],
        .coincidences = poisson_draw(coincidence_mean, cfg.rng_seed, i,
                                     kCoincidence),
        .singles1 = poisson_draw(T * cfg.singles_rate_1, cfg.rng_seed, i,
                                 kSingles1),
        .singles2 = poisson_draw(T * cfg.singles_rate_2_scale * s2[i],
                                 cfg.rng_seed, i, kSingles2),
        .integration_time = T,
    };
  });
  return out;
}

}  // namespace edgediff
