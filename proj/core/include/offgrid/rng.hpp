#pragma once

// Counter-based splittable random generator. Every draw is a pure function of
// (key, counter), so an experiment is bit-reproducible from one master seed no
// matter how trials are scheduled across threads: each trial derives its own
// stream with split() and never shares mutable state.

#include <cstdint>

namespace offgrid {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

  // Derive an independent stream; deterministic in (this->key_, stream).
  Rng split(std::uint64_t stream) const {
    Rng r(0);
    r.key_ = mix(key_ ^ mix(stream + 0x632be59bd9b4e019ull));
    r.ctr_ = 0;
    return r;
  }

  std::uint64_t next_u64() { return mix(key_ + (++ctr_) * 0x9e3779b97f4a7c15ull); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Box-Muller without a cached spare, so the draw count per call is fixed
  // and splitting/reordering streams cannot change results.
  double normal(double mu, double sigma);

  double laplace(double mu, double scale);      // inverse CDF
  double exponential(double rate);              // inverse CDF

  // Uniform integer in [0, n), n >= 1, rejection-free bias below 2^-64*n.
  std::uint64_t integer(std::uint64_t n);

  // The stream identity; recorded in CSV rows so one trial can be re-run.
  std::uint64_t state_key() const { return key_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t key_ = 0;
  std::uint64_t ctr_ = 0;
};

// Stream for one trial of one sweep row: master -> row -> trial.
inline Rng trial_rng(std::uint64_t master_seed, std::uint64_t row, std::uint64_t trial) {
  return Rng(master_seed).split(row).split(trial);
}

// The derived seed recorded in CSV rows (the key that trial_rng would use),
// so a single trial can be re-run in isolation.
std::uint64_t trial_seed_of(std::uint64_t master_seed, std::uint64_t row, std::uint64_t trial);

}  // namespace offgrid
