#include "lgf/multistep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "lgf/error.hpp"
#include "lgf/walkcount.hpp"

namespace lgf {

MultiStepConfig default_multistep_config(int d, const std::vector<int>& schedule) {
  MultiStepConfig c;
  c.schedule = schedule;
  const std::vector<int> s112 = {1, 1, 1}, s11 = {1, 1}, s212 = {2, 1, 2};
  if (d == 2 && schedule == s11) {
    c.counted_layers = 12;
    c.stages = {{{2, 1, 1, 1, -1}, 10, 0}};
  } else if (d == 3 && schedule == s112) {
    c.counted_layers = 18;
    c.stages = {{{2, 1, 1, 1, -1}, 14, 40}, {{2, 2, 2, 2, -1}, 38, 0}};
  } else if (d == 5 && schedule == s212) {
    // The two-variable stage needs a fairly wide ansatz: the narrow ones all
    // have vanishing leading coefficients along the axis.
    c.counted_layers = 16;
    c.stages = {{{1, 2, 1, 1, 1}, 14, 40}, {{2, 3, 2, 2, 2}, 38, 0}};
  } else {
    c.counted_layers = 16;
    for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
      c.stages.push_back({{2, 2, 2, 2, -1}, i == 0 ? 14 : 38, 40});
  }
  return c;
}

std::vector<int> parse_schedule(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError("bad schedule entry '" + item + "' in '" + text + "'");
    }
  }
  if (out.empty()) throw ValidationError("empty schedule");
  return out;
}

MultiStepResult multi_step_pipeline(const Lattice& lattice, const MultiStepConfig& config, int N) {
  const int d = lattice.dimension();
  if (N < 0) throw ValidationError("N must be nonnegative");
  const auto& schedule = config.schedule;
  if (schedule.empty() || std::any_of(schedule.begin(), schedule.end(), [](int s) { return s <= 0; }))
    throw ValidationError("schedule entries must be positive");
  if (std::accumulate(schedule.begin(), schedule.end(), 0) != d)
    throw ValidationError("schedule must drop all " + std::to_string(d) + " coordinates");
  if (config.stages.size() + 1 != schedule.size())
    throw ValidationError("need one stage configuration per schedule entry except the last");

  MultiStepResult result;
  WalkCountOptions wopt;
  wopt.threads = config.threads;
  wopt.memory_budget = config.memory_budget;
  if (schedule.size() == 1) {
    result.counts = count_excursions(lattice, N, wopt);
    return result;
  }

  const int N0 = config.counted_layers;
  wopt.radius_cut = N0;
  WalkTable counted = count_walk_table(lattice, N0, wopt);

  int vars = d - schedule[0];
  SliceTable table = slice_from_walks(counted, vars, N0);
  for (std::size_t i = 0; i < config.stages.size(); ++i) {
    const MultiStepStage& stage = config.stages[i];
    if (i > 0) {
      table = table.restricted(schedule[i]);
      vars -= schedule[i];
    }
    const bool last = i + 1 == config.stages.size();
    int target = N;
    if (!last) target = std::max(config.stages[i + 1].guess_layers, std::min(stage.extend_to, N));

    MultiGuessOptions gopt = config.guess;
    gopt.max_layer = stage.guess_layers;
    auto recs = guess_multivariate_recurrence(table, stage.ansatz, gopt);
    if (recs.empty())
      throw InsufficientDataError("stage " + std::to_string(i + 1) + " (" + std::to_string(vars) +
                                  " variables): no recurrence found in the ansatz");
    MultiStepStageReport rep;
    rep.variables = vars;
    rep.recurrences = recs.size();
    rep.extension = extend_slice(table, recs, stage.ansatz.time_order, std::max(target, table.layer_count() - 1),
                                 &lattice.step_set());
    rep.layers = table.layer_count();
    result.stages.push_back(rep);
  }

  const Point origin(vars, 0);
  result.counts.resize(N + 1);
  for (int n = 0; n <= N; ++n) result.counts[n] = table.value(n, origin);
  const Point full_origin(d, 0);
  for (int n = 0; n <= std::min(N, N0); ++n) {
    if (counted.value(n, full_origin) != result.counts[n])
      throw VerificationError("guess inconsistency: multi-step value differs from direct count at n=" +
                              std::to_string(n));
    ++result.cross_checked;
  }
  return result;
}

}  // namespace lgf
