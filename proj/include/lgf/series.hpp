#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lgf/bigint.hpp"

namespace lgf {

// Truncated power series with exact rational coefficients c_0..c_N.
struct ExactSeries {
  std::vector<Rat> coefficients;
  std::string variable = "z";

  std::size_t size() const { return coefficients.size(); }
  const Rat& operator[](std::size_t i) const { return coefficients[i]; }
  ExactSeries truncated(std::size_t n) const;
};

ExactSeries series_from_integers(const std::vector<Int>& values, const Int& scale_base);

// Coefficients of s(z) / (1 - z).
ExactSeries partial_sums(const ExactSeries& s);

// Cauchy product, truncated to the shorter length.
ExactSeries cauchy_product(const ExactSeries& a, const ExactSeries& b);

// Sequence dump: header "# lgf-seq d=<d> c=<c> N=<N>", then one term per line
// as a decimal integer or num/den. N is the index of the last term.
struct SequenceHeader {
  int d = 0;
  int c = 0;
  int N = -1;
};

void write_sequence(std::ostream& os, const SequenceHeader& h, const std::vector<Int>& values);
void write_sequence(std::ostream& os, const SequenceHeader& h, const std::vector<Rat>& values);

struct SequenceDump {
  SequenceHeader header;
  std::vector<Rat> values;
};

SequenceDump read_sequence(std::istream& is);

}  // namespace lgf
