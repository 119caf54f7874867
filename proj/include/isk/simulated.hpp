#pragma once

#include <cstdint>

#include "isk/hadamard.hpp"
#include "isk/hashing.hpp"
#include "isk/random.hpp"

namespace isk {

// Stand-ins for the two sketches over an explicit matrix and any g. With
// probability 1 - delta the value lies in the advertised bracket around the
// exact answer; otherwise it is pushed outside it (a zero answer becomes 1).

/// aggregate_norm(g, a, mask) * (1 + eps' * U[-1, 1]).
double sim_ba1(const ExplicitMatrix& a, const HadamardFunction& g, const BitHash& mask,
               double eps_prime, double delta1, std::uint64_t seed);
/// masked_norm(g, a, mask) * r^U[-1, 1].
double sim_ba2(const ExplicitMatrix& a, const HadamardFunction& g, const BitHash& mask, double r,
               double delta2, std::uint64_t seed);

/// Calls sim_ba1 or sim_ba2 with a fresh seed per call. Not thread-safe.
class SimulatedBlackbox {
 public:
  enum class Kind { kAggregate, kMatrix };

  /// spread is eps' for kAggregate and r for kMatrix. The matrix must outlive this object.
  SimulatedBlackbox(const ExplicitMatrix& a, HadamardFunction g, Kind kind, double spread,
                    double delta, std::uint64_t seed);

  double operator()(const BitHash& mask);

  std::uint64_t calls() const noexcept { return calls_; }

 private:
  const ExplicitMatrix* a_;
  HadamardFunction g_;
  Kind kind_;
  double spread_;
  double delta_;
  SplitMix64 gen_;
  std::uint64_t calls_ = 0;
};

}  // namespace isk
