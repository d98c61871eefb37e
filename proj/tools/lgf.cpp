// Command-line front end: counting, guessing, operator tools, certificate
// checks and the return-probability pipeline.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lgf/analytic_series.hpp"
#include "lgf/certificate.hpp"
#include "lgf/error.hpp"
#include "lgf/golden.hpp"
#include "lgf/guess.hpp"
#include "lgf/multistep.hpp"
#include "lgf/ode_ops.hpp"
#include "lgf/pipeline.hpp"
#include "lgf/walkcount.hpp"

using namespace lgf;
using json = nlohmann::ordered_json;

namespace {

struct Flags {
  int d = 0;
  int N = -1;
  int max_order = 4;
  int max_degree = 4;
  int digits = 50;
  int threads = 1;
  std::string schedule;
  std::string ode_file;
  std::string out;
  std::string input;
  std::string golden;
  bool json = false;
  bool partial_sums = false;
  bool normalized = false;
};

std::string rat_str(const Rat& r) { return to_string(r); }

json poly_json(const IntPoly& p) {
  json a = json::array();
  for (const auto& c : p.coefficients()) a.push_back(c.get_str());
  return a;
}

json operator_json(const PolyCoeffOperator& op) {
  json a = json::array();
  for (const auto& c : op.coefficients()) a.push_back(poly_json(c));
  return a;
}

int dimension(const Flags& f) {
  if (f.d < 2) throw ValidationError("invalid dimension " + std::to_string(f.d) + ": need -d >= 2");
  return f.d;
}

int terms(const Flags& f) {
  if (f.N < 0) throw ValidationError("missing -N (index of the last term)");
  return f.N;
}

std::vector<Int> counts_for(const Flags& f) {
  const int d = dimension(f);
  WalkCountOptions opt;
  opt.threads = f.threads;
  return count_excursions(Lattice::fcc(d), terms(f), opt);
}

Int coordination(int d) { return Int(2 * d * (d - 1)); }

// Input series: a sequence dump (a_n with c > 1 is rescaled to p_n), or fresh
// counts for -d/-N.
ExactSeries series_for(const Flags& f) {
  if (!f.input.empty()) {
    std::ifstream in(f.input);
    if (!in) throw ValidationError("cannot open '" + f.input + "'");
    const auto dump = read_sequence(in);
    ExactSeries s;
    Rat scale = 1;
    for (const auto& v : dump.values) {
      s.coefficients.push_back(v / scale);
      if (dump.header.c > 1) scale *= dump.header.c;
    }
    return s;
  }
  return series_from_integers(counts_for(f), coordination(dimension(f)));
}

LinearODE ode_for(const Flags& f) {
  if (!f.ode_file.empty()) return f.d == 6 ? golden::load_ode_6d(f.ode_file) : read_ode_file(f.ode_file);
  switch (f.d) {
    case 2:
      return golden::ode_2d();
    case 4:
      return golden::ode_4d();
    case 5:
      return golden::ode_5d();
    case 6:
      throw InsufficientDataError("the 6D ODE is not embedded; supply it with --ode-file");
    default:
      throw ValidationError("no embedded ODE for d=" + std::to_string(f.d) + "; use --ode-file");
  }
}

class Output {
 public:
  explicit Output(const Flags& f) : f_(f) {}
  std::ostream& text() { return buf_; }
  json& data() { return data_; }
  void finish(const std::string& command) {
    std::string body;
    if (f_.json) {
      json env;
      env["command"] = command;
      env["ok"] = true;
      env["result"] = data_;
      body = env.dump(2) + "\n";
    } else {
      body = buf_.str();
    }
    if (f_.out.empty()) {
      std::cout << body;
    } else {
      std::ofstream o(f_.out, std::ios::binary);
      if (!o) throw ValidationError("cannot write '" + f_.out + "'");
      o << body;
    }
  }

 private:
  const Flags& f_;
  std::ostringstream buf_;
  json data_ = json::object();
};

void cmd_count(const Flags& f, Output& out) {
  const int d = dimension(f);
  const auto a = counts_for(f);
  const Int c = coordination(d);
  SequenceHeader h{d, static_cast<int>(c.get_si()), f.N};
  if (f.partial_sums || f.normalized) {
    auto s = series_from_integers(a, c);
    if (f.partial_sums) s = partial_sums(s);
    h.c = 1;
    write_sequence(out.text(), h, s.coefficients);
    for (const auto& v : s.coefficients) out.data()["values"].push_back(rat_str(v));
  } else {
    write_sequence(out.text(), h, a);
    for (const auto& v : a) out.data()["values"].push_back(v.get_str());
  }
  out.data()["d"] = d;
  out.data()["c"] = h.c;
  out.data()["kind"] = f.partial_sums ? "partial_sums" : f.normalized ? "probabilities" : "counts";
}

void cmd_series_wallis(const Flags& f, Output& out) {
  const int d = dimension(f);
  AnalyticSeriesOptions opt;
  opt.threads = f.threads;
  const auto a = excursion_counts_wallis(d, terms(f), opt);
  write_sequence(out.text(), SequenceHeader{d, static_cast<int>(coordination(d).get_si()), f.N}, a);
  for (const auto& v : a) out.data()["values"].push_back(v.get_str());
}

GuessOptions guess_options(const Flags& f) {
  GuessOptions g;
  g.max_order = f.max_order;
  g.max_degree = f.max_degree;
  return g;
}

void cmd_guess_rec(const Flags& f, Output& out) {
  const auto s = series_for(f);
  const auto rec = guess_recurrence(f.partial_sums ? partial_sums(s).coefficients : s.coefficients, guess_options(f));
  if (!rec) throw InsufficientDataError("no recurrence within order " + std::to_string(f.max_order) + ", degree " +
                                        std::to_string(f.max_degree));
  write_operator(out.text(), *rec);
  out.data()["recurrence"] = operator_json(*rec);
  out.data()["text"] = rec->to_string();
}

void cmd_guess_ode(const Flags& f, Output& out) {
  const auto s = series_for(f);
  const auto ode = guess_ode(f.partial_sums ? partial_sums(s) : s, guess_options(f));
  if (!ode) throw InsufficientDataError("no ODE within order " + std::to_string(f.max_order) + ", degree " +
                                        std::to_string(f.max_degree));
  write_operator(out.text(), *ode);
  out.data()["ode"] = operator_json(*ode);
  out.data()["text"] = ode->to_string();
}

void cmd_multistep(const Flags& f, Output& out) {
  const int d = dimension(f);
  const auto schedule = f.schedule.empty() ? std::vector<int>(d, 1) : parse_schedule(f.schedule);
  auto cfg = default_multistep_config(d, schedule);
  cfg.threads = f.threads;
  const auto res = multi_step_pipeline(Lattice::fcc(d), cfg, terms(f));
  write_sequence(out.text(), SequenceHeader{d, static_cast<int>(coordination(d).get_si()), f.N}, res.counts);
  for (const auto& v : res.counts) out.data()["values"].push_back(v.get_str());
  out.data()["cross_checked"] = res.cross_checked;
  json stages = json::array();
  for (const auto& st : res.stages)
    stages.push_back({{"variables", st.variables},
                      {"recurrences", st.recurrences},
                      {"layers", st.layers},
                      {"solved", st.extension.solved},
                      {"walked", st.extension.walked}});
  out.data()["stages"] = stages;
  std::cerr << "multistep: " << res.cross_checked << " terms cross-checked against direct counts\n";
}

void cmd_ode2rec(const Flags& f, Output& out) {
  const auto ode = ode_for(f);
  const auto rec = ode_to_recurrence(ode);
  write_operator(out.text(), rec);
  out.data()["recurrence"] = operator_json(rec);
  out.data()["offset"] = recurrence_offset(ode);
}

void cmd_closure(const Flags& f, Output& out) {
  const auto cl = quotient_closure(ode_for(f));
  write_operator(out.text(), cl);
  out.data()["ode"] = operator_json(cl);
}

void cmd_indicial(const Flags& f, Output& out) {
  const auto p = indicial_polynomial(ode_for(f));
  out.text() << p.to_string("lambda") << "\n";
  out.data()["indicial"] = poly_json(p);
  out.data()["text"] = p.to_string("lambda");
}

void cmd_verify_ode(const Flags& f, Output& out) {
  const auto ode = ode_for(f);
  ExactSeries s;
  if (!f.schedule.empty()) {
    SeriesOptions so;
    so.d = dimension(f);
    so.N = terms(f);
    so.multistep = true;
    so.schedule = parse_schedule(f.schedule);
    so.threads = f.threads;
    s = fcc_series(so).series;
  } else {
    s = series_for(f);
  }
  const auto r = apply_ode_to_series(ode, s);
  long first = -1;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) {
      first = static_cast<long>(i);
      break;
    }
  out.data()["checked"] = r.size();
  out.data()["residual_zero"] = first < 0;
  if (first >= 0) {
    out.data()["first_nonzero"] = first;
    out.finish("verify-ode");
    throw VerificationError("residual coefficient " + std::to_string(first) + " is " + rat_str(r[first]));
  }
  out.text() << "residual 0 on " << r.size() << " coefficients\n";
}

void cmd_certify(const Flags& f, Output& out) {
  std::optional<int> d;
  if (f.d > 0) d = f.d;
  CertificateReport rep;
  if (!f.golden.empty()) {
    const std::string* text = f.golden == "2d"             ? &golden::certificate_2d()
                              : f.golden == "stage-z"      ? &golden::certificate_2d_stage_z()
                              : f.golden == "stage-x2"     ? &golden::certificate_2d_stage_x2()
                              : f.golden == "second-stage" ? &golden::certificate_2d_second_stage()
                                                           : nullptr;
    if (!text) throw ValidationError("unknown bundled certificate '" + f.golden + "'");
    std::istringstream in(*text);
    rep = verify_certificate(in, d);
  } else {
    if (f.input.empty()) throw ValidationError("certify needs a certificate file or --golden");
    rep = verify_certificate_file(f.input, d);
  }
  out.data()["dimension"] = rep.dimension;
  out.data()["integrate"] = rep.integration_variables;
  out.data()["lines"] = rep.operator_lines;
  out.data()["holds"] = rep.holds;
  out.data()["spot_points"] = rep.spot_points;
  out.data()["spot_check_agrees"] = rep.spot_check_agrees;
  if (!rep.holds) out.data()["first_failing_term"] = rep.first_failing_term;
  if (rep.holds) {
    out.text() << "PASS d=" << rep.dimension << ", " << rep.operator_lines << " operator lines, spot check at "
               << rep.spot_points << " points " << (rep.spot_check_agrees ? "agrees" : "DISAGREES") << "\n";
  }
  if (!rep.holds || !rep.spot_check_agrees) {
    out.text() << "FAIL" << (rep.holds ? "" : ", first failing term: " + rep.first_failing_term) << "\n";
    out.finish("certify");
    throw VerificationError(rep.holds ? "numeric spot check disagrees with the exact check"
                                      : "certificate does not verify; first failing term " + rep.first_failing_term);
  }
}

void cmd_pipeline(const Flags& f, Output& out) {
  PipelineOptions po;
  po.d = dimension(f);
  po.digits = f.digits;
  po.threads = f.threads;
  if (f.N >= 0) po.series_terms = f.N + 1;
  if (!f.ode_file.empty()) po.ode_file = f.ode_file;
  po.log = [](const std::string& s) { std::cerr << s << "\n"; };
  const auto rep = run_pipeline(po);
  auto& t = out.text();
  t << "d = " << rep.d << "\n";
  t << "series: " << rep.series_source << ", " << rep.series_terms << " terms\n";
  t << "ODE (" << rep.ode_source << ", order " << rep.ode.order() << ", degree " << rep.ode.degree() << "): "
    << rep.ode.to_string() << "\n";
  if (rep.matches_embedded) t << "matches embedded ODE: " << (*rep.matches_embedded ? "yes" : "no") << "\n";
  t << "residual 0 on " << rep.verified_coefficients << " coefficients\n";
  t << "indicial polynomial: " << rep.indicial.to_string("lambda") << "\n";
  t << "ODE for P/(1-z): order " << rep.closure.order() << ", degree " << rep.closure.degree() << "\n";
  t << "recurrence for f(n): " << rep.recurrence.to_string() << "\n";
  t << "extrapolation: n <= " << rep.schedule.terms << ", order " << rep.schedule.order << ", "
    << rep.digits.precision << " and " << rep.digits.precision + 64 << " bits\n";
  t << format_digits(rep.digits);
  if (rep.expected_r) t << "reference R: " << *rep.expected_r << "\n";

  auto& j = out.data();
  j["d"] = rep.d;
  j["series_source"] = rep.series_source;
  j["series_terms"] = rep.series_terms;
  j["ode"] = operator_json(rep.ode);
  j["ode_source"] = rep.ode_source;
  if (rep.matches_embedded) j["matches_embedded"] = *rep.matches_embedded;
  j["verified_coefficients"] = rep.verified_coefficients;
  j["indicial"] = poly_json(rep.indicial);
  j["recurrence"] = operator_json(rep.recurrence);
  j["divergent"] = rep.digits.divergent;
  j["P1"] = rep.digits.p1;
  j["R"] = rep.digits.r;
  j["places"] = rep.digits.places;
  j["precision_bits"] = {rep.digits.precision, rep.digits.precision + 64};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Green's functions of fcc lattices: counting, guessing, certificates, return probabilities"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* s) {
    s->add_option("-d", f.d, "dimension");
    s->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
    s->add_option("--out", f.out, "write the result to this file");
    s->add_flag("--json", f.json, "machine-readable JSON envelope");
  };
  auto with_n = [&](CLI::App* s) { s->add_option("-N", f.N, "index of the last term")->check(CLI::NonNegativeNumber); };
  auto with_box = [&](CLI::App* s) {
    s->add_option("--max-order", f.max_order, "maximal order")->check(CLI::PositiveNumber);
    s->add_option("--max-degree", f.max_degree, "maximal coefficient degree")->check(CLI::NonNegativeNumber);
  };

  struct Command {
    CLI::App* app;
    void (*run)(const Flags&, Output&);
  };
  std::vector<Command> commands;
  auto add = [&](const std::string& name, const std::string& help, void (*run)(const Flags&, Output&)) {
    auto* s = app.add_subcommand(name, help);
    common(s);
    commands.push_back({s, run});
    return s;
  };

  auto* count = add("count", "exact excursion counts a_n(0)", cmd_count);
  with_n(count);
  count->add_flag("--partial-sums", f.partial_sums, "print f(n) = sum_{k<=n} a_k(0)/c^k");
  count->add_flag("--normalized", f.normalized, "print p_n(0) = a_n(0)/c^n");

  with_n(add("series-wallis", "a_n(0) from the multinomial expansion", cmd_series_wallis));

  for (auto [name, run] : {std::pair{"guess-rec", cmd_guess_rec}, std::pair{"guess-ode", cmd_guess_ode}}) {
    auto* s = add(name, std::string("guess a ") + (run == cmd_guess_rec ? "recurrence" : "differential equation"),
                  run);
    with_n(s);
    with_box(s);
    s->add_option("input", f.input, "sequence dump (default: count with -d/-N)");
    s->add_flag("--partial-sums", f.partial_sums, "guess for the partial sums");
  }

  auto* ms = add("multistep", "a_n(0) by multi-step guessing", cmd_multistep);
  with_n(ms);
  ms->add_option("--schedule", f.schedule, "comma-separated coordinate drops, e.g. 2,1,2");

  for (auto [name, help, run] :
       {std::tuple{"ode2rec", "recurrence for the Taylor coefficients", cmd_ode2rec},
        std::tuple{"closure", "ODE for P(z)/(1-z)", cmd_closure},
        std::tuple{"indicial", "indicial polynomial at z=0", cmd_indicial}}) {
    add(name, help, run)->add_option("--ode-file", f.ode_file, "operator file (default: embedded ODE for -d)");
  }

  auto* vo = add("verify-ode", "apply an ODE to the counted series", cmd_verify_ode);
  with_n(vo);
  vo->add_option("--ode-file", f.ode_file, "operator file (default: embedded ODE for -d)");
  vo->add_option("--schedule", f.schedule, "use multi-step guessing with this schedule");
  vo->add_option("input", f.input, "sequence dump (default: count with -d/-N)");

  auto* ce = add("certify", "verify a creative-telescoping certificate", cmd_certify);
  ce->add_option("input", f.input, "certificate file");
  ce->add_option("--golden", f.golden, "bundled certificate: 2d, stage-z, stage-x2, second-stage");

  auto* pl = add("pipeline", "return probability from counts to digits", cmd_pipeline);
  with_n(pl);
  pl->add_option("--digits", f.digits, "target decimal digits")->check(CLI::PositiveNumber);
  pl->add_option("--ode-file", f.ode_file, "operator file (required for d=6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::validation);
  }

  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    Output out(f);
    try {
      c.run(f, out);
      out.finish(c.app->get_name());
      return 0;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return e.exit_code();
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << "\n";
      return 1;
    }
  }
  return 0;
}
