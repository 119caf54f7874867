#include "report.hpp"

#include <cmath>
#include <stdexcept>

namespace isk::cli {

namespace {

double finite(double v, const char* field) {
  if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite report field ") + field);
  return v;
}

}  // namespace

void RunReport::set_oracle(double value) {
  oracle = value;
  const double diff = std::fabs(estimate - value);
  relative_error = value > 0.0 ? diff / value : diff;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["estimate"] = finite(estimate, "estimate");
  if (oracle) {
    j["oracle"] = finite(*oracle, "oracle");
    j["relative_error"] = finite(relative_error.value(), "relative_error");
  }
  j["algorithm"] = algorithm;
  j["n"] = n;
  j["m"] = m;
  j["eps"] = finite(eps, "eps");
  j["seed"] = seed;
  j["space_bytes"] = space_bytes;
  j["wall_time_ms"] = finite(wall_time_ms, "wall_time_ms");
  j["constants_regime"] = constants_regime;
  j["g"] = g;
  j["blackbox"] = blackbox;
  j["isa"] = isa;
  j["c_r"] = finite(c_r, "c_r");
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& l : levels) {
    lv.push_back({{"level", l.level},
                  {"cover_size", l.cover_size},
                  {"abstention_rate", finite(l.abstention_rate, "abstention_rate")},
                  {"y", finite(l.y, "y")}});
  }
  j["levels"] = lv;
  if (f0) j["f0"] = *f0;
  if (f0_overflow) j["f0_overflow"] = *f0_overflow;
  return j;
}

}  // namespace isk::cli
