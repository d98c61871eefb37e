#include "lgf/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>

#include "lgf/error.hpp"
#include "lgf/ore.hpp"

namespace lgf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_at(long line, const std::string& msg) {
  throw ValidationError("certificate line " + std::to_string(line) + ": " + msg);
}

// Numeric side of the check: running sums of the operator lines applied to
// local expansions of the function at a few points.
class SpotSums {
 public:
  void init(std::vector<std::vector<Rat>> points, std::function<LocalSeries(std::span<const Rat>, int)> expand) {
    points_ = std::move(points);
    expand_ = std::move(expand);
    sums_.assign(points_.size(), Rat(0));
    valid_.assign(points_.size(), 1);
    cache_.assign(points_.size(), {});
  }

  // delta_var < 0: telescoper line; otherwise D_{delta_var} applied after op.
  void add(const OrePolynomial& op, int delta_var) {
    const int need = std::max(0, op.order()) + (delta_var >= 0 ? 1 : 0);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!valid_[i]) continue;
      try {
        LocalSeries r = apply_operator(op, series(i, need), points_[i]);
        sums_[i] += delta_var >= 0 ? r.derivative(delta_var).constant_term() : r.constant_term();
      } catch (const ValidationError&) {
        valid_[i] = 0;  // a coefficient has a pole here
      }
    }
  }

  int valid_points() const { return static_cast<int>(std::count(valid_.begin(), valid_.end(), 1)); }
  bool all_zero() const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (valid_[i] && sums_[i] != 0) return false;
    return true;
  }

 private:
  const LocalSeries& series(std::size_t i, int order) {
    auto it = cache_[i].lower_bound(order);
    if (it != cache_[i].end()) return it->second;
    return cache_[i].emplace(order, expand_(points_[i], order)).first->second;
  }

  std::vector<std::vector<Rat>> points_;
  std::function<LocalSeries(std::span<const Rat>, int)> expand_;
  std::vector<Rat> sums_;
  std::vector<char> valid_;
  std::vector<std::map<int, LocalSeries>> cache_;
};

}  // namespace

CertificateReport verify_certificate(std::istream& is, std::optional<int> expected_dimension, int spot_points) {
  CertificateReport rep;
  std::string line;
  long lineno = 0;
  if (!std::getline(is, line)) throw ValidationError("empty certificate");
  ++lineno;
  if (line.rfind("# lgf-cert", 0) != 0) fail_at(lineno, "expected a '# lgf-cert' header");
  std::string integrate;
  {
    std::istringstream hs(line.substr(10));
    std::string field;
    while (hs >> field) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = field.substr(0, eq), value = field.substr(eq + 1);
      try {
        if (key == "d") rep.dimension = std::stoi(value);
      } catch (const std::exception&) {
        fail_at(lineno, "bad dimension '" + value + "'");
      }
      if (key == "integrate") integrate = value;
    }
  }
  if (rep.dimension < 2) fail_at(lineno, "header needs d=<dimension> with d >= 2");
  if (expected_dimension && *expected_dimension != rep.dimension)
    fail_at(lineno, "certificate is for d=" + std::to_string(rep.dimension) + ", expected d=" +
                        std::to_string(*expected_dimension));
  const IntegrandSpec fcc = IntegrandSpec::fcc(rep.dimension);
  const auto names = fcc.variable_names();
  const int nv = fcc.nvars();
  auto var_index = [&](const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) fail_at(lineno, "unknown variable '" + name + "'");
    return static_cast<int>(it - names.begin());
  };
  std::vector<int> integration;
  {
    std::stringstream ss(integrate);
    std::string v;
    while (std::getline(ss, v, ',')) {
      integration.push_back(var_index(v));
      rep.integration_variables.push_back(v);
    }
  }
  if (integration.empty()) fail_at(lineno, "header needs integrate=<variables>");

  enum class Block { none, annihilator, telescoper, delta };
  Block block = Block::none;
  int delta_var = -1;
  std::vector<OrePolynomial> annihilators;
  std::optional<TelescopingCheck> check;
  std::optional<HyperexponentialFunction> g;
  SpotSums spots;
  bool saw_telescoper = false;

  auto fix_function = [&]() {
    if (check) return;
    if (block == Block::annihilator || !annihilators.empty()) {
      rep.custom_function = true;
      g = HyperexponentialFunction::from_annihilators(nv, annihilators);
    } else {
      g = HyperexponentialFunction::from_integrand(fcc);
    }
    check.emplace(*g, integration);
    if (spot_points > 0) {
      std::vector<const FactoredRatFunc*> avoid;
      for (const auto& l : g->log_derivative) avoid.push_back(&l);
      auto points = random_points(nv, spot_points, 0x5eed, avoid, rep.custom_function ? nullptr : &fcc);
      if (rep.custom_function)
        spots.init(std::move(points), [gg = *g](std::span<const Rat> p, int order) { return expand_at(gg, p, order); });
      else
        spots.init(std::move(points), [fcc](std::span<const Rat> p, int order) { return expand_at(fcc, p, order); });
    }
  };

  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t == "annihilator") {
      if (check) fail_at(lineno, "annihilator blocks must come before the telescoper and delta parts");
      block = Block::annihilator;
      annihilators.emplace_back(nv);
      continue;
    }
    if (t == "telescoper") {
      fix_function();
      block = Block::telescoper;
      saw_telescoper = true;
      continue;
    }
    if (t.rfind("delta", 0) == 0 && (t.size() == 5 || t[5] == ' ' || t[5] == '\t')) {
      fix_function();
      const int v = var_index(trim(t.substr(5)));
      if (std::find(integration.begin(), integration.end(), v) == integration.end())
        fail_at(lineno, "delta part for '" + names[v] + "', which is not integrated");
      block = Block::delta;
      delta_var = v;
      continue;
    }
    if (block == Block::none) fail_at(lineno, "operator outside of a block");
    OrePolynomial op(nv);
    try {
      op = parse_ore(t, names);
    } catch (const ValidationError& e) {
      fail_at(lineno, e.what());
    }
    ++rep.operator_lines;
    try {
      switch (block) {
        case Block::annihilator:
          annihilators.back() += op;
          break;
        case Block::telescoper:
          check->add_telescoper(op);
          spots.add(op, -1);
          break;
        case Block::delta:
          check->add_delta(delta_var, op);
          spots.add(op, delta_var);
          break;
        case Block::none:
          break;
      }
    } catch (const ValidationError& e) {
      fail_at(lineno, e.what());
    }
  }
  if (!saw_telescoper) throw ValidationError("certificate has no telescoper block");

  rep.holds = check->holds();
  if (!rep.holds) {
    const auto& num = check->residual().numerator();
    const auto& [e, c] = *num.terms().rbegin();
    rep.first_failing_term = MPoly::monomial(nv, e, c).to_string(names);
  }
  rep.spot_points = spot_points > 0 ? spots.valid_points() : 0;
  rep.spot_check_agrees = rep.spot_points == 0 || spots.all_zero() == rep.holds;
  return rep;
}

CertificateReport verify_certificate_file(const std::string& path, std::optional<int> expected_dimension,
                                          int spot_points) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open certificate file '" + path + "'");
  return verify_certificate(in, expected_dimension, spot_points);
}

}  // namespace lgf
