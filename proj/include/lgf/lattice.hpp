#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lgf/bigint.hpp"

namespace lgf {

using Point = std::vector<int>;

// Permitted steps of a walk model on Z^d.
class StepSet {
 public:
  StepSet(int dimension, std::vector<Point> steps);

  int dimension() const { return dimension_; }
  const std::vector<Point>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }

 private:
  int dimension_;
  std::vector<Point> steps_;
};

// All vectors in {-1,0,1}^d with exactly two nonzero entries, lexicographic.
// Throws ValidationError for d < 2.
StepSet fcc_step_set(int d);

// Unit vectors and their negatives.
StepSet hypercubic_step_set(int d);

class Lattice {
 public:
  explicit Lattice(StepSet steps);

  static Lattice fcc(int d) { return Lattice(fcc_step_set(d)); }

  const StepSet& step_set() const { return steps_; }
  int dimension() const { return steps_.dimension(); }
  int coordination_number() const { return static_cast<int>(steps_.size()); }

 private:
  StepSet steps_;
};

// lambda(k) = C(d,2)^{-1} sum_{m<n} cos k_m cos k_n, stored as its pair list.
class StructureFunction {
 public:
  explicit StructureFunction(int d);

  int dimension() const { return d_; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  Rat normalization() const { return Rat(1, static_cast<unsigned long>(pairs_.size())); }

  // Throws ValidationError when k has the wrong length.
  double eval(std::span<const double> k) const;

 private:
  int d_;
  std::vector<std::pair<int, int>> pairs_;
};

// (1/|S|) sum_{s in S} prod_j cos(k_j)^{|s_j|}: the Fourier transform of the
// one-step distribution of a symmetric {-1,0,1} step set.
double fourier_structure_function(const StepSet& steps, std::span<const double> k);

}  // namespace lgf
