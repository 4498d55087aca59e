#pragma once

#include <cstdint>
#include <limits>

namespace hospsim {

/// What a random stream is used for. Part of the stream key so that two
/// purposes never share draws even for the same agent.
enum class StreamPurpose : std::uint32_t {
  Arrivals = 1,
  PatientAttributes = 2,
  Triage = 3,
  PatientChoice = 4,
  PatientClinical = 5,
  PatientAdherence = 6,
  DoctorChoice = 7,
  Durations = 8,
  Test = 99,
};

struct StreamKey {
  std::uint64_t replication = 0;
  StreamPurpose purpose = StreamPurpose::Test;
  std::uint64_t agent = 0;
};

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the i-th draw is mix(key + (i+1)·gamma), i.e. a
/// SplitMix64 sequence whose starting state is a hash of (seed, key).
/// Two streams with the same seed and key produce the same sequence on every
/// platform; the stream can be positioned anywhere without replaying draws.
class RngStream {
public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  RngStream() = default;
  RngStream(std::uint64_t master_seed, StreamKey key) : key_(derive(master_seed, key)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * kGamma);
  }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); safe to pass to log().
  double uniform_open() {
    double u = 0.0;
    while (u == 0.0) u = uniform();
    return u;
  }

  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t counter() const { return counter_; }
  void seek(std::uint64_t counter) { counter_ = counter; }
  std::uint64_t key() const { return key_; }

  static constexpr std::uint64_t derive(std::uint64_t master_seed, StreamKey k) {
    std::uint64_t h = splitmix64_mix(master_seed ^ 0x6a09e667f3bcc909ULL);
    h = splitmix64_mix(h ^ (k.replication + 0x3c6ef372fe94f82bULL));
    h = splitmix64_mix(h ^ (static_cast<std::uint64_t>(k.purpose) * kGamma));
    h = splitmix64_mix(h ^ (k.agent + 0xa54ff53a5f1d36f1ULL));
    return h;
  }

private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

/// Seed for one (design run, replication) pair, derived from the master seed.
inline constexpr std::uint64_t derive_run_seed(std::uint64_t master_seed, std::uint64_t run) {
  return splitmix64_mix(splitmix64_mix(master_seed + 0x510e527fade682d1ULL) ^ (run * RngStream::kGamma));
}

}  // namespace hospsim
