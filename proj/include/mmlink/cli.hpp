#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmlink/config.hpp"
#include "mmlink/optimizer.hpp"

// Command implementations behind the CLI front end; the binary in tools/
// only does flag parsing. All commands write CSV into out_dir plus a JSON
// run manifest, and return a process exit status.
namespace mmlink::cli {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;      // overrides [run] seed
  std::optional<std::uint64_t> trials;    // overrides [run] trials
  optimizer::Evaluator evaluator = optimizer::Evaluator::analytic;
};

// Sweep axis for `outage` / `optimal-n`.
struct SweepAxis {
  enum class Var { snr_db, n_elements, sigma_mrad, offset_mrad };
  Var var = Var::snr_db;
  double from = 0.0;
  double to = 40.0;
  double step = 1.0;

  std::vector<double> values() const;
  static SweepAxis parse(const std::string& text);  // "snr:0:40:1" etc.
};

inline constexpr const char* kVersion = "0.1.0";

int run_curve(const CommonOptions& opts);
int run_outage(const CommonOptions& opts, const SweepAxis& axis);
// Exit 0 when the analytic/MC agreement tolerances hold, 2 otherwise.
int run_validate(const CommonOptions& opts);
// With an axis, emits one optimum row per sweep value.
int run_optimal_n(const CommonOptions& opts, int n_min, int n_max,
                  const std::optional<SweepAxis>& axis = std::nullopt);

}  // namespace mmlink::cli
