#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lgf/guess.hpp"
#include "lgf/holonomic.hpp"
#include "lgf/numerics.hpp"
#include "lgf/series.hpp"

namespace lgf {

// Series of p_n(0) for the d-dimensional fcc lattice, from direct counting or
// multi-step guessing. d=5 uses multi-step 2,1,2 unless counting is forced.
struct SeriesOptions {
  int d = 4;
  int N = 0;  // index of the last term
  bool multistep = false;
  std::vector<int> schedule;  // empty: default for d
  int threads = 1;
  std::optional<std::size_t> memory_budget;
};
struct SeriesResult {
  ExactSeries series;
  std::vector<Int> counts;
  std::string source;
};
SeriesResult fcc_series(const SeriesOptions& options);

struct PipelineOptions {
  int d = 4;
  int digits = 50;
  // 0 selects the per-dimension default.
  int series_terms = 0;
  int extension_terms = 0;
  int extrapolation_order = 0;
  std::optional<std::string> ode_file;
  int threads = 1;
  std::optional<std::size_t> memory_budget;
  // Progress lines (stage name and detail).
  std::function<void(const std::string&)> log;
};

struct PipelineReport {
  int d = 0;
  std::string series_source;
  int series_terms = 0;
  LinearODE ode;
  std::string ode_source;  // "guessed", "embedded", "file"
  std::optional<bool> matches_embedded;
  int verified_coefficients = 0;  // series coefficients annihilated by the ODE
  IntPoly indicial;
  LinearODE closure;
  LinearRecurrence recurrence;
  DigitSchedule schedule;
  DigitReport digits;
  std::optional<std::string> expected_r;  // reference value, if any
};

// count/guess -> ODE -> quotient closure -> recurrence -> extend ->
// extrapolate. Errors carry the failing stage in their message.
PipelineReport run_pipeline(const PipelineOptions& options);

}  // namespace lgf
