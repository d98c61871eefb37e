#include "lgf/series.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "lgf/error.hpp"

namespace lgf {

ExactSeries ExactSeries::truncated(std::size_t n) const {
  ExactSeries r;
  r.variable = variable;
  r.coefficients.assign(coefficients.begin(), coefficients.begin() + std::min(n, coefficients.size()));
  return r;
}

ExactSeries series_from_integers(const std::vector<Int>& values, const Int& scale_base) {
  ExactSeries s;
  Int scale = 1;
  for (const auto& v : values) {
    s.coefficients.push_back(make_rat(v, scale));
    scale *= scale_base;
  }
  return s;
}

ExactSeries partial_sums(const ExactSeries& s) {
  ExactSeries r;
  r.variable = s.variable;
  Rat acc = 0;
  for (const auto& c : s.coefficients) {
    acc += c;
    r.coefficients.push_back(acc);
  }
  return r;
}

ExactSeries cauchy_product(const ExactSeries& a, const ExactSeries& b) {
  ExactSeries r;
  r.variable = a.variable;
  const std::size_t n = std::min(a.size(), b.size());
  r.coefficients.assign(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r.coefficients[i + j] += a[i] * b[j];
  return r;
}

namespace {

void write_header(std::ostream& os, const SequenceHeader& h, std::size_t count) {
  os << "# lgf-seq d=" << h.d << " c=" << h.c << " N=" << (static_cast<long>(count) - 1) << "\n";
}

}  // namespace

void write_sequence(std::ostream& os, const SequenceHeader& h, const std::vector<Int>& values) {
  write_header(os, h, values.size());
  for (const auto& v : values) os << v.get_str() << "\n";
}

void write_sequence(std::ostream& os, const SequenceHeader& h, const std::vector<Rat>& values) {
  write_header(os, h, values.size());
  for (const auto& v : values) os << to_string(v) << "\n";
}

SequenceDump read_sequence(std::istream& is) {
  SequenceDump dump;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# lgf-seq", 0) != 0)
    throw ValidationError("sequence dump: missing '# lgf-seq' header");
  std::istringstream hs(line.substr(9));
  std::string field;
  bool have_n = false;
  while (hs >> field) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw ValidationError("sequence dump: bad header field '" + field + "'");
    std::string key = field.substr(0, eq);
    int value = std::stoi(field.substr(eq + 1));
    if (key == "d") dump.header.d = value;
    else if (key == "c") dump.header.c = value;
    else if (key == "N") {
      dump.header.N = value;
      have_n = true;
    }
  }
  if (!have_n) throw ValidationError("sequence dump: header lacks N");
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    dump.values.push_back(parse_rat(line));
  }
  if (static_cast<int>(dump.values.size()) != dump.header.N + 1)
    throw ValidationError("sequence dump: expected " + std::to_string(dump.header.N + 1) + " terms, found " +
                          std::to_string(dump.values.size()));
  return dump;
}

}  // namespace lgf
