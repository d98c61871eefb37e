#pragma once

#include <optional>
#include <vector>

#include "lgf/holonomic.hpp"
#include "lgf/series.hpp"

namespace lgf {

struct GuessOptions {
  int max_order = 4;
  int max_degree = 4;
  int min_order = 1;
  // Required surplus of equations over unknowns.
  int margin = 10;
  // Trailing terms withheld from the solve and used only to check the result.
  int holdout = 10;
};

// Minimal order, then minimal degree, then lexicographically smallest
// normalized coefficient vector. Returns nullopt when the searched box holds no
// annihilator; throws InsufficientDataError when the data is all zero or when
// no solution was found and part of the box could not be overdetermined.
std::optional<LinearRecurrence> guess_recurrence(const std::vector<Rat>& values, const GuessOptions& options);
std::optional<LinearODE> guess_ode(const ExactSeries& series, const GuessOptions& options);

}  // namespace lgf
