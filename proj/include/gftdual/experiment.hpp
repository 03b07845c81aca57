#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gftdual/rng.hpp"

namespace gftdual {

enum class ExperimentMethod { CD, CDPM, DUP };

const char* to_string(ExperimentMethod method) noexcept;
ExperimentMethod parse_experiment_method(std::string_view name);

struct ExperimentConfig {
  std::vector<int> n_values{10, 15, 20, 25, 30};
  double p = 0.4;
  int trials = 20;
  int restarts = 50;
  double epsilon = 1e-8;
  int max_iterations = 500;
  RngSeed seed{1};
  std::vector<ExperimentMethod> methods{ExperimentMethod::CD, ExperimentMethod::CDPM, ExperimentMethod::DUP};
  /// When false wall_time_ms is written as 0, making the CSV a pure function
  /// of the configuration.
  bool record_timing = true;
};

struct ExperimentRecord {
  int n = 0;
  double p = 0.0;
  int trial = 0;
  ExperimentMethod method = ExperimentMethod::CD;
  double objective = 0.0;  // trace objective, or the bound for DUP
  double dualness = 0.0;
  int iterations = 0;      // solver iterations of the best restart; interior-point steps for DUP
  int restarts_used = 0;   // 0 for DUP
  int resample_count = 0;  // graphs rejected for repeated eigenvalues
  std::int64_t wall_time_ms = 0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

inline constexpr int kMaxResamples = 100;

/// For every n and trial the pair is drawn from Rng(derive_seed(seed, n, trial)):
/// first graph, then second, each redrawn until its spectrum is simple (at
/// most kMaxResamples rejections per pair). Multistart runs use master seed
/// derive_seed(trial seed, 1). Records are ordered by (n, trial, method).
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "n,p,trial,method,objective,dualness,iterations,restarts_used,resample_count,wall_time_ms";

/// Reals are written in shortest round-trip form, so read_csv(write_csv(r)) == r.
std::string write_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_csv(std::string_view text);

struct SeriesPoint {
  int n = 0;
  double mean_objective = 0.0;
};

struct Series {
  ExperimentMethod method;
  std::vector<SeriesPoint> points;  // ascending n
};

/// Per-method mean objective for each n, methods in CD, CDPM, DUP order.
std::vector<Series> mean_series(const std::vector<ExperimentRecord>& records);

/// Mean objective vs n, one polyline per method, in an 800 x 600 SVG 1.1
/// document. Plot area: x in [80, 640], y in [40, 540]. With n spanning
/// [n_lo, n_hi] and the means spanning [m_lo, m_hi] (widened by 0.5 each way
/// when equal), y_lo = m_lo - 0.05 (m_hi - m_lo), y_hi = m_hi + 0.05 (m_hi - m_lo):
///   x_px = 80 + 560 (n - n_lo) / (n_hi - n_lo)     (360 when n_lo == n_hi)
///   y_px = 540 - 500 (mean - y_lo) / (y_hi - y_lo)
/// Polyline coordinates carry three decimals.
std::string plot_fig1(const std::vector<ExperimentRecord>& records);

}  // namespace gftdual
