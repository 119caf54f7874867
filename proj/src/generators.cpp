#include "isk/generators.hpp"

#include <cstdio>
#include <stdexcept>

#include "isk/random.hpp"

namespace isk {

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  GeneratorSpec spec;
  if (text == "independent") {
    spec.mode = GeneratorMode::kIndependent;
  } else if (text == "perfect-dependence" || text == "perfect_dependence") {
    spec.mode = GeneratorMode::kPerfectDependence;
  } else if (text == "planted-rows" || text == "planted_rows") {
    spec.mode = GeneratorMode::kPlantedRows;
  } else if (text.rfind("mixture:", 0) == 0) {
    spec.mode = GeneratorMode::kMixture;
    std::size_t used = 0;
    try {
      spec.lambda = std::stod(text.substr(8), &used);
    } catch (const std::exception&) {
      throw std::domain_error("bad mixture weight in '" + text + "'");
    }
    if (used != text.size() - 8) throw std::domain_error("bad mixture weight in '" + text + "'");
    if (!(spec.lambda >= 0.0 && spec.lambda <= 1.0)) {
      throw std::domain_error("mixture weight must lie in [0, 1]");
    }
  } else {
    throw std::domain_error("unknown generator mode '" + text + "'");
  }
  return spec;
}

std::string GeneratorSpec::name() const {
  switch (mode) {
    case GeneratorMode::kIndependent:
      return "independent";
    case GeneratorMode::kPerfectDependence:
      return "perfect-dependence";
    case GeneratorMode::kPlantedRows:
      return "planted-rows";
    case GeneratorMode::kMixture:
    {
      char buf[32];
      std::snprintf(buf, sizeof buf, "mixture:%g", lambda);
      return buf;
    }
  }
  return "unknown";
}

StreamGenerator::StreamGenerator(GeneratorSpec spec, std::size_t n, std::uint64_t seed)
    : spec_(spec), n_(n), seed_(derive_seed(seed, SeedStream::kGenerator)) {
  if (n == 0) throw std::domain_error("generator needs n >= 1");
  if (!(spec.lambda >= 0.0 && spec.lambda <= 1.0)) {
    throw std::domain_error("mixture weight must lie in [0, 1]");
  }
  if (spec.mode == GeneratorMode::kPlantedRows) {
    if (n < 3) throw std::domain_error("planted rows need n >= 3");
    if (!(spec.planted_mass >= 0.0 && spec.planted_mass <= 1.0)) {
      throw std::domain_error("planted mass must lie in [0, 1]");
    }
    SplitMix64 gen(derive_seed(seed_, 0xF1A7ULL));
    for (std::size_t k = 0; k < 3; ++k) {
      for (;;) {
        const std::uint64_t r = gen.below(n) + 1;
        bool fresh = true;
        for (std::size_t q = 0; q < k; ++q) fresh = fresh && planted_[q] != r;
        if (fresh) {
          planted_[k] = r;
          break;
        }
      }
    }
  }
}

StreamEvent StreamGenerator::at(std::uint64_t position) const noexcept {
  SplitMix64 gen(splitmix64(seed_ + position));
  const double coin = gen.uniform();
  StreamEvent e{gen.below(n_) + 1, gen.below(n_) + 1};
  switch (spec_.mode) {
    case GeneratorMode::kIndependent:
      break;
    case GeneratorMode::kPerfectDependence:
      e.j = e.i;
      break;
    case GeneratorMode::kMixture:
      if (coin < spec_.lambda) e.j = e.i;
      break;
    case GeneratorMode::kPlantedRows:
      if (coin < spec_.planted_mass) {
        const double w = coin / spec_.planted_mass;
        const std::uint64_t r = w < 0.5 ? planted_[0] : (w < 0.8 ? planted_[1] : planted_[2]);
        e = StreamEvent{r, r};
      }
      break;
  }
  return e;
}

std::vector<StreamEvent> generate(const GeneratorSpec& spec, std::size_t n, std::size_t m,
                                  std::uint64_t seed) {
  if (m == 0) throw std::domain_error("stream length must be >= 1");
  const StreamGenerator gen(spec, n, seed);
  std::vector<StreamEvent> out;
  out.reserve(m);
  for (std::size_t p = 0; p < m; ++p) out.push_back(gen.at(p));
  return out;
}

}  // namespace isk
