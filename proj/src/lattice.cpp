#include "lgf/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lgf/error.hpp"

namespace lgf {

StepSet::StepSet(int dimension, std::vector<Point> steps)
    : dimension_(dimension), steps_(std::move(steps)) {
  if (dimension_ < 1) throw ValidationError("invalid dimension " + std::to_string(dimension_));
  std::set<Point> seen;
  for (const auto& s : steps_) {
    if (static_cast<int>(s.size()) != dimension_)
      throw ValidationError("step has wrong length");
    if (!seen.insert(s).second) throw ValidationError("duplicate step");
  }
  for (const auto& s : steps_) {
    Point neg(s);
    for (int& x : neg) x = -x;
    if (!seen.count(neg)) throw ValidationError("step set is not closed under negation");
  }
}

StepSet fcc_step_set(int d) {
  if (d < 2) throw ValidationError("invalid dimension " + std::to_string(d) + ": fcc needs d >= 2");
  std::vector<Point> steps;
  Point s(d, -1);
  // Odometer over {-1,0,1}^d in lexicographic order.
  for (;;) {
    int nonzero = 0;
    for (int x : s) nonzero += x != 0;
    if (nonzero == 2) steps.push_back(s);
    int i = d - 1;
    while (i >= 0 && s[i] == 1) s[i--] = -1;
    if (i < 0) break;
    ++s[i];
  }
  return StepSet(d, std::move(steps));
}

StepSet hypercubic_step_set(int d) {
  std::vector<Point> steps;
  for (int i = 0; i < d; ++i) {
    Point p(d, 0);
    p[i] = -1;
    steps.push_back(p);
  }
  for (int i = d - 1; i >= 0; --i) {
    Point p(d, 0);
    p[i] = 1;
    steps.push_back(p);
  }
  std::sort(steps.begin(), steps.end());
  return StepSet(d, std::move(steps));
}

Lattice::Lattice(StepSet steps) : steps_(std::move(steps)) {}

StructureFunction::StructureFunction(int d) : d_(d) {
  if (d < 2) throw ValidationError("invalid dimension " + std::to_string(d));
  for (int m = 0; m < d; ++m)
    for (int n = m + 1; n < d; ++n) pairs_.emplace_back(m, n);
}

double StructureFunction::eval(std::span<const double> k) const {
  if (static_cast<int>(k.size()) != d_)
    throw ValidationError("structure function: expected " + std::to_string(d_) + " coordinates, got " +
                          std::to_string(k.size()));
  double sum = 0;
  for (auto [m, n] : pairs_) sum += std::cos(k[m]) * std::cos(k[n]);
  return sum / static_cast<double>(pairs_.size());
}

double fourier_structure_function(const StepSet& steps, std::span<const double> k) {
  if (static_cast<int>(k.size()) != steps.dimension())
    throw ValidationError("structure function: dimension mismatch");
  double sum = 0;
  for (const auto& s : steps.steps()) {
    double t = 1;
    for (std::size_t j = 0; j < s.size(); ++j)
      if (s[j] != 0) t *= std::cos(k[j]);
    sum += t;
  }
  return sum / static_cast<double>(steps.size());
}

}  // namespace lgf
