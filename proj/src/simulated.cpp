#include "isk/simulated.hpp"

#include <cmath>
#include <stdexcept>

namespace isk {

namespace {

double signed_unit(SplitMix64& gen) { return 2.0 * gen.uniform() - 1.0; }

}  // namespace

double sim_ba1(const ExplicitMatrix& a, const HadamardFunction& g, const BitHash& mask,
               double eps_prime, double delta1, std::uint64_t seed) {
  if (!(eps_prime >= 0.0 && eps_prime < 1.0)) throw std::domain_error("eps' must lie in [0, 1)");
  if (!(delta1 >= 0.0 && delta1 <= 1.0)) throw std::domain_error("delta1 must lie in [0, 1]");
  const double truth = aggregate_norm(g, a, mask);
  SplitMix64 gen(seed);
  const bool fail = gen.uniform() < delta1;
  const double u = gen.uniform();
  if (fail) return truth == 0.0 ? 1.0 : truth * (1.0 + eps_prime) * (1.5 + u);
  return truth * (1.0 + eps_prime * (2.0 * u - 1.0));
}

double sim_ba2(const ExplicitMatrix& a, const HadamardFunction& g, const BitHash& mask, double r,
               double delta2, std::uint64_t seed) {
  if (!(r >= 1.0)) throw std::domain_error("r must be >= 1");
  if (!(delta2 >= 0.0 && delta2 <= 1.0)) throw std::domain_error("delta2 must lie in [0, 1]");
  const double truth = masked_norm(g, a, mask);
  SplitMix64 gen(seed);
  const bool fail = gen.uniform() < delta2;
  if (fail) return truth == 0.0 ? 1.0 : truth * r * (1.5 + gen.uniform());
  return truth * std::pow(r, signed_unit(gen));
}

SimulatedBlackbox::SimulatedBlackbox(const ExplicitMatrix& a, HadamardFunction g, Kind kind,
                                     double spread, double delta, std::uint64_t seed)
    : a_(&a), g_(g), kind_(kind), spread_(spread), delta_(delta), gen_(seed) {}

double SimulatedBlackbox::operator()(const BitHash& mask) {
  ++calls_;
  const std::uint64_t seed = gen_();
  return kind_ == Kind::kAggregate ? sim_ba1(*a_, g_, mask, spread_, delta_, seed)
                                   : sim_ba2(*a_, g_, mask, spread_, delta_, seed);
}

}  // namespace isk
