#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <thread>

#include "isk/calibration.hpp"
#include "isk/errors.hpp"
#include "isk/generators.hpp"
#include "isk/kernels.hpp"
#include "isk/recsum.hpp"
#include "isk/regime.hpp"
#include "isk/sketches.hpp"
#include "isk/stream.hpp"
#include "json.hpp"
#include "report.hpp"
#include "stream_file.hpp"

namespace isk::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("cannot write '" + path + "'");
}

RCalibration load_calibration(const std::string& path) {
  if (!std::filesystem::exists(path)) {
    std::cerr << "warning: calibration file '" << path << "' not found; using default c_r = 4\n";
    return {};
  }
  std::ifstream in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("calibration file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.contains("c_r") || !j["c_r"].is_number() || !(j["c_r"].get<double>() > 0.0)) {
    throw ConfigError("calibration file '" + path + "' needs a positive number 'c_r'");
  }
  return RCalibration{j["c_r"].get<double>()};
}

// Domain size: --n, else the header, else the largest index in the file.
std::size_t resolve_n(const EstimateOptions& opt) {
  const auto header = read_header_n(opt.input);
  if (opt.n && header && *opt.n != *header) {
    throw ConfigError("--n " + std::to_string(*opt.n) + " contradicts the file header n=" +
                      std::to_string(*header));
  }
  if (opt.n) return *opt.n;
  if (header) return *header;
  const PairFileInfo info = scan_pair_file(opt.input, [](const StreamEvent&) {});
  if (info.events == 0) throw InputError("'" + opt.input + "' holds no events");
  return static_cast<std::size_t>(info.max_index);
}

std::uint64_t ingest_file(const std::string& path, std::size_t n,
                          const std::function<void(const StreamEvent&)>& fn) {
  const PairFileInfo info = scan_pair_file(path, [&](const StreamEvent& e) {
    check_event(e, n);
    fn(e);
  });
  if (info.events == 0) throw InputError("'" + path + "' holds no events");
  return info.events;
}

void append_csv(const std::string& path, const RunReport& r) {
  const bool fresh = !std::filesystem::exists(path);
  std::ofstream out(path, std::ios::app);
  if (!out) throw InputError("cannot write '" + path + "'");
  if (fresh) out << "x,estimate,oracle,error\n";
  out.precision(17);
  out << r.n << ',' << r.estimate << ',';
  if (r.oracle) out << *r.oracle;
  out << ',';
  if (r.relative_error) out << *r.relative_error;
  out << '\n';
}

void run_exact(const EstimateOptions& opt, const HadamardFunction& g, RunReport& r) {
  ExactHistogram h(r.n);
  r.m = ingest_file(opt.input, r.n, [&](const StreamEvent& e) { h.ingest(e); });
  r.estimate = exact_distance(h, g);
  r.blackbox = "none";
  r.space_bytes = (2 * r.n + 2 * h.joint_cells()) * sizeof(std::uint64_t);
}

void run_im08(const EstimateOptions& opt, const Regime regime, RunReport& r) {
  IMMatrixSketch sketch(r.n, BitHash::constant(r.n, true), matrix_reps_for(regime), r.seed);
  r.m = ingest_file(opt.input, r.n, [&](const StreamEvent& e) { sketch.ingest(e); });
  for (const auto& path : opt.load_sketch) sketch.merge(IMMatrixSketch::deserialize(read_bytes(path)));
  if (!opt.save_sketch.empty()) {
    std::vector<std::uint8_t> bytes;
    sketch.serialize(bytes);
    write_bytes(opt.save_sketch, bytes);
  }
  r.m = sketch.m_seen();
  r.estimate = sketch.estimate();
  r.blackbox = "sketch";
  r.space_bytes = sketch.space_bytes();
}

void fill_levels(const FinalEstimate& est, RunReport& r) {
  for (std::size_t j = 0; j < est.cover_sizes.size(); ++j) {
    LevelDiagnostics d;
    d.level = j;
    d.cover_size = est.cover_sizes[j];
    d.abstention_rate = j < est.abstention_rates.size() ? est.abstention_rates[j] : 0.0;
    d.y = est.y[j];
    r.levels.push_back(d);
  }
  r.f0 = est.f0;
  r.f0_overflow = est.f0_overflow;
}

void run_pipeline(const EstimateOptions& opt, const HadamardFunction& g, Regime regime,
                  const RCalibration& cal, RunReport& r) {
  const std::size_t threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                               : opt.threads;
  if (g.is_l1()) {
    RecursiveSumConfig cfg;
    cfg.n = r.n;
    cfg.eps = opt.eps;
    cfg.seed = r.seed;
    cfg.regime = regime;
    cfg.calibration = cal;
    RecursiveSum rs(cfg);
    r.m = ingest_file(opt.input, r.n, [&](const StreamEvent& e) { rs.ingest(e); });
    const FinalEstimate est = rs.estimate(threads);
    r.estimate = est.result;
    r.space_bytes = rs.space_bytes();
    r.blackbox = "sketch";
    fill_levels(est, r);
    return;
  }
  // No streaming blackbox exists for |x|^p; run over the explicit matrix.
  ExactHistogram h(r.n);
  r.m = ingest_file(opt.input, r.n, [&](const StreamEvent& e) { h.ingest(e); });
  const ExplicitMatrix a = ImplicitMatrixView(h).to_explicit();
  ExplicitRunConfig cfg;
  cfg.eps = opt.eps;
  cfg.seed = r.seed;
  cfg.regime = regime;
  cfg.calibration = cal;
  const FinalEstimate est = explicit_recursive_sum(a, g, cfg);
  r.estimate = est.result;
  r.space_bytes = r.n * r.n * sizeof(double);
  r.blackbox = "simulated";
  fill_levels(est, r);
}

}  // namespace

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(kSeedEnv) + " must be a non-negative integer, got '" + env + "'");
  }
}

void cmd_generate(const GenerateOptions& opt) {
  GeneratorSpec spec = GeneratorSpec::parse(opt.mode);
  spec.planted_mass = opt.planted_mass;
  if (opt.m == 0) throw ConfigError("--m must be >= 1 (empty streams are rejected)");
  const auto events = generate(spec, opt.n, opt.m, resolve_seed(opt.seed));
  if (opt.output == "-") {
    write_pair_file(std::cout, opt.n, events, opt.header);
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.output);
  if (!out) throw InputError("cannot write '" + opt.output + "'");
  write_pair_file(out, opt.n, events, opt.header);
  if (!out) throw InputError("cannot write '" + opt.output + "'");
}

void cmd_estimate(const EstimateOptions& opt) {
  const auto start = Clock::now();
  const Regime regime = parse_regime(opt.regime);
  const HadamardFunction g = HadamardFunction::parse(opt.g);
  if (opt.algorithm != "exact" && opt.algorithm != "im08" && opt.algorithm != "pipeline") {
    throw ConfigError("unknown algorithm '" + opt.algorithm + "' (expected exact, im08 or pipeline)");
  }
  if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw ConfigError("--eps must lie in (0, 1)");
  if (opt.algorithm == "im08" && !g.is_l1()) {
    throw ConfigError("im08 estimates only g = l1; lp distances need --algorithm pipeline");
  }
  if (opt.algorithm != "im08" && (!opt.save_sketch.empty() || !opt.load_sketch.empty())) {
    throw ConfigError("sketch checkpoints are supported for --algorithm im08 only");
  }
  if (opt.with_oracle && !opt.load_sketch.empty()) {
    throw ConfigError("--with-oracle cannot score a sketch merged from other streams");
  }

  RunReport r;
  r.algorithm = opt.algorithm;
  r.eps = opt.eps;
  r.seed = resolve_seed(opt.seed);
  r.constants_regime = regime_name(regime);
  r.g = g.name();
  r.isa = std::string(kernels::isa_name(kernels::active_isa()));
  r.n = resolve_n(opt);
  const RCalibration cal =
      opt.algorithm == "exact" ? RCalibration{} : load_calibration(opt.calibration);
  r.c_r = cal.c_r;

  if (opt.algorithm == "exact") {
    run_exact(opt, g, r);
  } else if (opt.algorithm == "im08") {
    run_im08(opt, regime, r);
  } else {
    run_pipeline(opt, g, regime, cal, r);
  }
  if (opt.with_oracle) {
    ExactHistogram h(r.n);
    ingest_file(opt.input, r.n, [&](const StreamEvent& e) { h.ingest(e); });
    r.set_oracle(exact_distance(h, g));
  }
  r.wall_time_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  const nlohmann::json j = r.to_json();
  if (!opt.emit_csv.empty()) append_csv(opt.emit_csv, r);
  std::cout << j.dump(2) << '\n';
}

void cmd_calibrate(const CalibrateOptions& opt) {
  CalibrationGrid grid;
  grid.ns = opt.ns;
  grid.families.clear();
  for (const auto& f : opt.families) grid.families.push_back(GeneratorSpec::parse(f));
  grid.trials = opt.trials;
  grid.m = opt.m;
  grid.seed = resolve_seed(opt.seed);
  grid.reps = matrix_reps_for(parse_regime(opt.regime));
  grid.delta2 = opt.delta2;
  const CalibrationFit fit = fit_calibration(grid);
  if (!fit.fitted) {
    std::cerr << "warning: no usable calibration trial (every cell had n < 2 or a zero distance); "
                 "keeping c_r = 4\n";
  }
  nlohmann::json j;
  j["c_r"] = fit.c_r;
  j["fitted"] = fit.fitted;
  j["trials_used"] = fit.trials_used;
  j["trials_skipped"] = fit.trials_skipped;
  j["delta2"] = grid.delta2;
  j["reps"] = grid.reps;
  j["m"] = grid.m;
  j["seed"] = grid.seed;
  j["ns"] = grid.ns;
  j["families"] = opt.families;
  std::ofstream out(opt.output);
  if (!out) throw InputError("cannot write '" + opt.output + "'");
  out << j.dump(2) << '\n';
  if (!out) throw InputError("cannot write '" + opt.output + "'");
  std::cout << j.dump(2) << '\n';
}

}  // namespace isk::cli
