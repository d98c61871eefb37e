#include "lgf/pipeline.hpp"

#include <algorithm>

#include "lgf/error.hpp"
#include "lgf/golden.hpp"
#include "lgf/lattice.hpp"
#include "lgf/multistep.hpp"
#include "lgf/ode_ops.hpp"
#include "lgf/walkcount.hpp"

namespace lgf {

namespace {

[[noreturn]] void rethrow_in_stage(const Error& e, const std::string& stage) {
  const std::string msg = stage + ": " + e.what();
  switch (e.kind()) {
    case ErrorKind::validation:
      throw ValidationError(msg);
    case ErrorKind::resource:
      throw ResourceError(msg);
    case ErrorKind::insufficient_data:
      throw InsufficientDataError(msg);
    case ErrorKind::verification:
      throw VerificationError(msg);
  }
  throw ValidationError(msg);
}

template <class F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    rethrow_in_stage(e, name);
  }
}

struct Defaults {
  int terms;
  int max_order;
  int max_degree;
};

Defaults defaults_for(int d) {
  switch (d) {
    case 2:
      return {60, 3, 4};
    case 3:
      return {80, 4, 8};
    case 4:
      return {100, 4, 10};
    case 5:
      return {170, 6, 17};
    default:
      return {0, 0, 0};
  }
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

// Last index whose value the recurrence cannot produce by itself.
int last_free_index(const LinearRecurrence& rec, int search) {
  int last = rec.order() - 1;
  for (int m = 0; m <= search; ++m)
    if (rec.leading().eval(Int(m)) == 0) last = m + rec.order();
  return last;
}

}  // namespace

SeriesResult fcc_series(const SeriesOptions& options) {
  const Lattice lattice = Lattice::fcc(options.d);
  SeriesResult res;
  if (options.multistep) {
    const auto schedule = options.schedule.empty() ? (options.d == 5 ? std::vector<int>{2, 1, 2}
                                                                     : std::vector<int>(options.d, 1))
                                                   : options.schedule;
    auto cfg = default_multistep_config(options.d, schedule);
    cfg.threads = options.threads;
    cfg.memory_budget = options.memory_budget;
    res.counts = multi_step_pipeline(lattice, cfg, options.N).counts;
    res.source = "multi-step " + join(schedule);
  } else {
    WalkCountOptions wopt;
    wopt.threads = options.threads;
    wopt.memory_budget = options.memory_budget;
    res.counts = count_excursions(lattice, options.N, wopt);
    res.source = "counting";
  }
  res.series = series_from_integers(res.counts, Int(lattice.coordination_number()));
  return res;
}

PipelineReport run_pipeline(const PipelineOptions& options) {
  auto log = [&](const std::string& s) {
    if (options.log) options.log(s);
  };
  const int d = options.d;
  if (d < 2 || d > 6) throw ValidationError("pipeline supports dimensions 2 to 6, got " + std::to_string(d));
  if (d == 6 && !options.ode_file)
    throw InsufficientDataError(
        "the 6D ODE is not embedded; supply it with --ode-file (order 8, degree 43)");
  if (options.digits < 1) throw ValidationError("digits must be positive");

  PipelineReport rep;
  rep.d = d;
  const Defaults def = defaults_for(d);

  // Operator: from the file (6D), or guessed from the series.
  std::optional<LinearODE> file_ode;
  if (options.ode_file) {
    file_ode = stage("ode-file", [&] {
      return d == 6 ? golden::load_ode_6d(*options.ode_file) : read_ode_file(*options.ode_file);
    });
  }

  int terms = options.series_terms > 0 ? options.series_terms : def.terms;
  if (file_ode) {
    const auto rec = ode_to_recurrence(quotient_closure(*file_ode));
    const int need = last_free_index(rec, 4 * rec.order() + 4 * rec.degree() + 64) + 6;
    terms = std::max(options.series_terms, need);
  }
  SeriesOptions sopt;
  sopt.d = d;
  sopt.N = terms - 1;
  sopt.multistep = d == 5;
  sopt.threads = options.threads;
  sopt.memory_budget = options.memory_budget;
  log("series: " + std::string(sopt.multistep ? "multi-step" : "counting") + " to n = " + std::to_string(sopt.N));
  const SeriesResult series = stage("series", [&] { return fcc_series(sopt); });
  rep.series_source = series.source;
  rep.series_terms = static_cast<int>(series.series.size());

  if (file_ode) {
    rep.ode = *file_ode;
    rep.ode_source = "file";
  } else {
    GuessOptions g;
    g.max_order = def.max_order;
    g.max_degree = def.max_degree;
    log("guess: ODE with order <= " + std::to_string(g.max_order) + ", degree <= " + std::to_string(g.max_degree));
    auto guessed = stage("guess", [&] { return guess_ode(series.series, g); });
    if (!guessed) throw InsufficientDataError("guess: no ODE in the searched box");
    rep.ode = *guessed;
    rep.ode_source = "guessed";
  }
  const LinearODE* embedded = d == 2 ? &golden::ode_2d() : d == 4 ? &golden::ode_4d() : d == 5 ? &golden::ode_5d()
                                                                                          : nullptr;
  if (embedded) rep.matches_embedded = rep.ode == *embedded;

  const auto residual = stage("verify-ode", [&] { return apply_ode_to_series(rep.ode, series.series); });
  if (!all_zero(residual.coefficients))
    throw VerificationError("verify-ode: ODE does not annihilate the series");
  rep.verified_coefficients = static_cast<int>(residual.size());
  rep.indicial = indicial_polynomial(rep.ode);

  rep.closure = quotient_closure(rep.ode);
  rep.recurrence = ode_to_recurrence(rep.closure);
  log("recurrence: order " + std::to_string(rep.recurrence.order()) + ", degree " +
      std::to_string(rep.recurrence.degree()));

  rep.schedule.digits = options.digits;
  rep.schedule.terms = options.extension_terms > 0 ? options.extension_terms : std::max(2000, 30 * options.digits);
  rep.schedule.order = options.extrapolation_order > 0 ? options.extrapolation_order : 30;
  const auto f = partial_sums(series.series).coefficients;
  log("extrapolate: f(n) to n = " + std::to_string(rep.schedule.terms) + ", order " +
      std::to_string(rep.schedule.order));
  rep.digits = stage("extrapolate",
                     [&] { return evaluate_return_probability(rep.recurrence, f, Rat(d - 2, 2), rep.schedule); });
  for (const auto& [dim, r] : golden::return_probability_table())
    if (dim == d) rep.expected_r = r;
  return rep;
}

}  // namespace lgf
