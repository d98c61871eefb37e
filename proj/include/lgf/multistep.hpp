#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgf/bigint.hpp"
#include "lgf/lattice.hpp"
#include "lgf/mguess.hpp"

namespace lgf {

// One guessing stage: the slice after a drop is guessed on layers
// 0..guess_layers and extended to extend_to layers (the last stage extends to
// the target instead).
struct MultiStepStage {
  MultiAnsatz ansatz;
  int guess_layers = 14;
  int extend_to = 40;
};

struct MultiStepConfig {
  std::vector<int> schedule;          // coordinate drops, summing to d
  int counted_layers = 16;            // layers counted directly on the full lattice
  std::vector<MultiStepStage> stages; // one per schedule entry except the last
  MultiGuessOptions guess;
  int threads = 1;
  std::optional<std::size_t> memory_budget;
};

// Ansatz choices that are known to work for the fcc lattices; other inputs
// get a generic (and possibly insufficient) configuration.
MultiStepConfig default_multistep_config(int d, const std::vector<int>& schedule);

struct MultiStepStageReport {
  int variables = 0;
  std::size_t recurrences = 0;
  int layers = 0;
  ExtensionReport extension;
};

struct MultiStepResult {
  std::vector<Int> counts;  // a_n(0), n = 0..N
  std::vector<MultiStepStageReport> stages;
  int cross_checked = 0;    // leading terms compared against direct counts
};

// Throws ValidationError for schedules that do not drop down to zero
// coordinates or for a stage list of the wrong length.
MultiStepResult multi_step_pipeline(const Lattice& lattice, const MultiStepConfig& config, int N);

// Parses "2,1,2".
std::vector<int> parse_schedule(const std::string& text);

}  // namespace lgf
