#include "thermocone/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "io.hpp"
#include "thermocone/cone.hpp"
#include "thermocone/exchange.hpp"
#include "thermocone/protocol/dilation.hpp"
#include "thermocone/protocol/entropy_protocol.hpp"

namespace thermocone::cli {

unsigned worker_count() {
  if (const char* env = std::getenv("THERMOCONE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Raw option values; each subcommand reads the ones it registered.
struct Options {
  std::string hamiltonian, rho, sigma, state, macro, unitary;
  std::string p, q, levels, m, m_base;
  std::string out, format;
  double beta_min = -5.0, beta_max = 5.0;
  std::size_t samples = 101;
  double beta = 0.0, beta1 = 1.0, beta2 = 1.0;
  double beta_cold = 0.0, beta_less_cold = 0.0, beta_less_hot = 0.0, beta_hot = 0.0;
  std::optional<double> tol;
  std::size_t grid = 2048;
  std::size_t n = 0;
  std::optional<std::size_t> ancilla_bits;
  double entropy_tol = 1e-3;
  double delta = 0.1;
  std::size_t k = 1, k_max = 64, m_k = 1;
};

HamiltonianSpec hamiltonian(const Options& o) {
  return parse_hamiltonian(load_json_arg(o.hamiltonian, "hamiltonian"));
}

QuantumState state_arg(const std::string& text, const std::string& what) {
  return parse_state(load_json_arg(text, what));
}

// --state or --macro, whichever was given.
QuantumState single_state(const Options& o) {
  if (!o.state.empty()) return state_arg(o.state, "state");
  if (!o.macro.empty()) return QuantumState::macro(parse_macro(load_json_arg(o.macro, "macro")));
  throw ValidationError("usage", "one of --state or --macro is required");
}

double tolerance(const Options& o, double fallback) {
  const double t = o.tol.value_or(fallback);
  if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("tol", "--tol must be positive");
  return t;
}

Json point_json(const ThermalPoint& t) {
  return Json{{"beta", number(t.beta)}, {"logZ", number(t.log_z)}, {"E", number(t.energy)},
              {"S", number(t.entropy)}};
}

Json matrix_json(const HermitianMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({number(m(r, c).real()), number(m(r, c).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

using Emitter = std::function<std::string(const Options&)>;

std::string emit_json(const Json& j, const Options& o) {
  if (o.format == "csv") {
    // Flat records only: one header row of keys, one row of values.
    if (!j.is_object()) throw ValidationError("format", "csv output needs a flat record");
    std::vector<std::string> header;
    std::string row;
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured()) continue;
      header.push_back(key);
      if (!row.empty() || header.size() > 1) row += ",";
      if (value.is_number())
        row += csv_number(value.get<double>());
      else if (value.is_string())
        row += value.get<std::string>();
      else
        row += value.dump();
    }
    std::string s;
    for (std::size_t i = 0; i < header.size(); ++i) s += (i ? "," : "") + header[i];
    return s + "\n" + row + "\n";
  }
  return dump_json(j);
}

std::string cmd_curve(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  if (o.samples == 0) throw ValidationError("samples", "--samples must be >= 1");
  if (!(o.beta_min <= o.beta_max)) throw ValidationError("beta_range", "--beta-min must not exceed --beta-max");
  const std::vector<double> betas = linspace<double>(o.beta_min, o.beta_max, o.samples);

  // Each worker fills a disjoint slice; assembly below is sequential.
  std::vector<ThermalPoint> points(betas.size());
  const std::size_t workers = std::min<std::size_t>(worker_count(), betas.size());
  const std::size_t chunk = (betas.size() + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> failures(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t end = std::min(betas.size(), (w + 1) * chunk);
        for (std::size_t i = w * chunk; i < end; ++i) points[i] = thermal_point(h, betas[i]);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  if (o.format == "json") {
    Json a = Json::array();
    for (const auto& p : points) a.push_back(point_json(p));
    return dump_json(a);
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(points.size());
  for (const auto& p : points) rows.push_back({p.beta, p.log_z, p.energy, p.entropy});
  return to_csv({"beta", "logZ", "E", "S"}, rows);
}

std::string cmd_member(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  Macrostate x;
  if (!o.macro.empty())
    x = parse_macro(load_json_arg(o.macro, "macro"));
  else if (!o.state.empty())
    x = macrostate_of(state_arg(o.state, "state"), h);
  else
    throw ValidationError("usage", "one of --state or --macro is required");
  const Membership m = diagram_contains(h, x, tolerance(o, 1e-9));
  return emit_json(Json{{"member", is_member(m)}, {"verdict", to_string(m)}, {"E", number(x.energy)},
                        {"S", number(x.entropy)}},
                   o);
}

std::string cmd_wmax(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  const QuantumState s = single_state(o);
  const Macrostate x = macrostate_of(s, h);
  return emit_json(Json{{"w_max", number(w_max(h, x))}, {"E", number(x.energy)},
                        {"S", number(x.entropy)}},
                   o);
}

std::string cmd_exchange(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  const ExchangeSpec spec{state_arg(o.rho, "rho"), state_arg(o.sigma, "sigma"), o.beta1, o.beta2};
  const ExchangeResult r = work_heat(h, spec);
  return emit_json(Json{{"m_over_n", number(r.m_over_n)},
                        {"ell_over_n", number(r.ell_over_n)},
                        {"beta_eff", number(r.beta_eff)},
                        {"W", number(r.work)},
                        {"Q", number(r.heat)},
                        {"W_athermality", number(r.work_athermality)},
                        {"battery_charging", r.battery_charging}},
                   o);
}

std::string cmd_engine(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  const EngineResult r =
      engine_efficiencies(h, o.beta_cold, o.beta_less_cold, o.beta_less_hot, o.beta_hot);
  return emit_json(Json{{"eta_engine", number(r.eta_engine)},
                        {"eta_refrigerator", number(r.eta_refrigerator)},
                        {"eta_carnot", number(1.0 - o.beta_hot / o.beta_cold)},
                        {"W", number(r.work)},
                        {"Q_hot", number(r.heat_hot)},
                        {"Q_cold", number(r.heat_cold)}},
                   o);
}

std::string cmd_rate(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  const ConePoint y_rho = cone_point_of(state_arg(o.rho, "rho"), h);
  const ConePoint y_sigma = cone_point_of(state_arg(o.sigma, "sigma"), h);
  RateOptions ro;
  ro.tol = tolerance(o, ro.tol);
  if (o.grid < 2) throw ValidationError("grid", "--grid must be >= 2");
  ro.grid_points = o.grid;
  const RateResult r = r_max(h, y_rho, y_sigma, ro);
  Json j{{"rate", number(r.rate_bisect)},
         {"rate_bisect", number(r.rate_bisect)},
         {"rate_monotone", number(r.rate_monotone)},
         {"gap", number(r.agreement_gap)},
         {"argmin", to_string(r.argmin)}};
  if (r.argmin == Facet::Athermality) j["argmin_beta"] = number(r.argmin_beta);
  return emit_json(j, o);
}

std::string cmd_decompose(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  const Macrostate x = macrostate_of(single_state(o), h);
  const DecompositionWeights w = decompose(h, x, o.beta);
  return emit_json(Json{{"beta", number(o.beta)},
                        {"c_beta", number(w.c_beta)},
                        {"c_min", number(w.c_min)},
                        {"c_max", number(w.c_max)}},
                   o);
}

std::string cmd_protocol(const Options& o) {
  const auto p = parse_distribution(load_json_arg(o.p, "p"));
  const auto q = parse_distribution(load_json_arg(o.q, "q"));
  if (o.n == 0) throw ValidationError("n", "--n must be >= 1");
  protocol::ProtocolOptions po;
  po.ancilla_bits = o.ancilla_bits;
  po.entropy_tolerance = o.entropy_tol;
  const auto r = protocol::run_entropy_protocol(p, q, o.n, po);
  Json j{{"n", r.n},
         {"ancilla_bits", r.ancilla_bits},
         {"entropy_p", number(r.entropy_p)},
         {"entropy_q", number(r.entropy_q)},
         {"p_typ", number(r.p_typ)},
         {"q_typ", number(r.q_typ)},
         {"typical_sources", r.typical_sources},
         {"typical_targets", r.typical_targets},
         {"distance", number(r.distance)},
         {"typical_distance", number(r.typical_distance)},
         {"lemma_bound", number(r.lemma_bound)},
         {"max_fiber", r.max_fiber},
         {"fiber_bound", number(r.fiber_bound)},
         {"warnings", r.warnings}};
  return emit_json(j, o);
}

std::string cmd_coarse(const Options& o) {
  const auto p = parse_distribution(load_json_arg(o.p, "p"));
  const auto q = parse_distribution(load_json_arg(o.q, "q"));
  const auto r = protocol::build_coarse_graining(p, q);
  Json push = Json::array();
  for (double v : r.map.pushforward.probabilities) push.push_back(number(v));
  Json j{{"assignment", r.map.assignment},
         {"fiber_sizes", r.map.fiber_sizes},
         {"pushforward", push},
         {"distance", number(r.distance)},
         {"l1_bound", number(r.l1_bound)},
         {"fiber_bound", number(r.fiber_bound)},
         {"max_fiber", r.max_fiber},
         {"l1_holds", r.l1_holds},
         {"fiber_holds", r.fiber_holds}};
  return emit_json(j, o);
}

std::string cmd_sumset(const Options& o) {
  const auto l = parse_levels(load_json_arg(o.levels, "levels"));
  const auto r = protocol::find_doubling_k(l, o.delta, o.k_max);
  const auto kl = protocol::k_fold(l, r.k);
  Json j{{"k", r.k},
         {"sizes", r.sizes},
         {"exponent", number(r.exponent)},
         {"ratio_sum", number(r.ratio_sum)},
         {"ratio_difference", number(r.ratio_difference)},
         {"norm", kl.norm().to_string()},
         {"size", kl.size()}};
  return emit_json(j, o);
}

std::string cmd_dilate(const Options& o) {
  const HamiltonianSpec h = hamiltonian(o);
  const HermitianMatrix u = parse_matrix(load_json_arg(o.unitary, "unitary"));
  const QuantumState rho = state_arg(o.rho, "rho");
  const QuantumState sigma = state_arg(o.sigma, "sigma");
  protocol::LevelSet m;
  if (!o.m.empty())
    m = parse_levels(load_json_arg(o.m, "m"));
  else if (!o.m_base.empty())
    m = protocol::k_fold(parse_levels(load_json_arg(o.m_base, "m-base")), o.m_k);
  else
    throw ValidationError("usage", "one of --m or --m-base is required");
  const auto r = protocol::build_energy_preserving_dilation(h, u, rho, sigma, m, o.delta);
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back(Json{{"mode", s.mode},
                          {"ancilla_dimension", s.ancilla_dimension},
                          {"total_dimension", s.total_dimension},
                          {"residual", number(s.residual)},
                          {"unitarity_error", number(s.unitarity_error)},
                          {"support_weight", number(s.support_weight)},
                          {"expected_support_weight", number(s.expected_support_weight)}});
  Json j{{"mode", r.mode},
         {"stages", stages},
         {"total_dimension", r.total_dimension},
         {"residual", number(r.residual)},
         {"distance", number(r.distance)},
         {"delta", number(r.delta)},
         {"precondition_distance", number(r.precondition_distance)},
         {"output", matrix_json(r.output)}};
  return emit_json(j, o);
}

void error_record(std::ostream& err, const std::string& code, const std::string& message) {
  err << Json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-entropy diagrams, thermal cones and conversion protocols", "thermocone"};
  app.require_subcommand(1);
  app.fallthrough(false);
  Options o;
  std::map<CLI::App*, Emitter> handlers;
  std::map<CLI::App*, std::string> default_format;

  auto add = [&](const std::string& name, const std::string& help, Emitter fn,
                 const std::string& fmt = "json") {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    handlers[sub] = std::move(fn);
    default_format[sub] = fmt;
    return sub;
  };
  auto ham = [&](CLI::App* s) { s->add_option("--hamiltonian", o.hamiltonian, "Hamiltonian JSON (file or inline)")->required(); };

  auto* curve = add("curve", "Sample the thermal curve", cmd_curve, "csv");
  ham(curve);
  curve->add_option("--beta-min", o.beta_min, "Smallest beta");
  curve->add_option("--beta-max", o.beta_max, "Largest beta");
  curve->add_option("--samples", o.samples, "Number of equally spaced beta values");

  auto* member = add("member", "Energy-entropy diagram membership", cmd_member);
  ham(member);
  member->add_option("--macro", o.macro, "Macrostate {\"E\":..,\"S\":..}");
  member->add_option("--state", o.state, "State JSON");
  member->add_option("--tol", o.tol, "Boundary tolerance");

  auto* wmax = add("wmax", "Work extractable without a reservoir", cmd_wmax);
  ham(wmax);
  wmax->add_option("--macro", o.macro, "Macrostate {\"E\":..,\"S\":..}");
  wmax->add_option("--state", o.state, "State JSON");

  auto* exchange = add("exchange", "Work and heat with a finite reservoir", cmd_exchange);
  ham(exchange);
  exchange->add_option("--rho", o.rho, "Initial state JSON")->required();
  exchange->add_option("--sigma", o.sigma, "Final state JSON")->required();
  exchange->add_option("--beta1", o.beta1, "Initial reservoir beta")->required();
  exchange->add_option("--beta2", o.beta2, "Final reservoir beta")->required();

  auto* engine = add("engine", "Finite-reservoir engine efficiencies", cmd_engine);
  ham(engine);
  engine->add_option("--beta-cold", o.beta_cold, "Cold reservoir start")->required();
  engine->add_option("--beta-less-cold", o.beta_less_cold, "Cold reservoir end")->required();
  engine->add_option("--beta-less-hot", o.beta_less_hot, "Hot reservoir end")->required();
  engine->add_option("--beta-hot", o.beta_hot, "Hot reservoir start")->required();

  auto* rate = add("rate", "Optimal asymptotic conversion rate", cmd_rate);
  ham(rate);
  rate->add_option("--rho", o.rho, "Source state JSON")->required();
  rate->add_option("--sigma", o.sigma, "Target state JSON")->required();
  rate->add_option("--tol", o.tol, "Bisection width");
  rate->add_option("--grid", o.grid, "Beta grid size for the monotone route");

  auto* dec = add("decompose", "Thermal plus pure-edge decomposition", cmd_decompose);
  ham(dec);
  dec->add_option("--macro", o.macro, "Macrostate {\"E\":..,\"S\":..}");
  dec->add_option("--state", o.state, "State JSON");
  dec->add_option("--beta", o.beta, "Inverse temperature of the thermal component")->required();

  auto* proto = add("protocol", "Typical-set entropy conversion p^n -> q^n", cmd_protocol);
  proto->add_option("--p", o.p, "Source distribution JSON")->required();
  proto->add_option("--q", o.q, "Target distribution JSON")->required();
  proto->add_option("--n", o.n, "Number of copies")->required();
  proto->add_option("--ancilla-bits", o.ancilla_bits, "Uniform ancilla bits");
  proto->add_option("--entropy-tol", o.entropy_tol, "Allowed entropy mismatch in bits");

  auto* coarse = add("coarse", "Greedy coarse-graining map", cmd_coarse);
  coarse->add_option("--p", o.p, "Source distribution JSON")->required();
  coarse->add_option("--q", o.q, "Target distribution JSON")->required();

  auto* sumset = add("sumset", "Smallest k with small doubling for kL", cmd_sumset);
  sumset->add_option("--levels", o.levels, "Level set JSON list")->required();
  sumset->add_option("--delta", o.delta, "Doubling slack");
  sumset->add_option("--k-max", o.k_max, "Largest k to try");

  auto* dilate = add("dilate", "Energy-preserving dilation of a unitary", cmd_dilate);
  ham(dilate);
  dilate->add_option("--unitary", o.unitary, "Unitary matrix JSON")->required();
  dilate->add_option("--rho", o.rho, "Input state JSON")->required();
  dilate->add_option("--sigma", o.sigma, "Target state JSON")->required();
  dilate->add_option("--m", o.m, "Ancilla level set JSON list");
  dilate->add_option("--m-base", o.m_base, "Level set whose k-fold sum is the ancilla");
  dilate->add_option("--m-k", o.m_k, "Fold count for --m-base");
  dilate->add_option("--delta", o.delta, "Precision");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    error_record(err, "usage", e.what());
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (o.format.empty()) o.format = default_format[sub];
    write_output(handlers[sub](o), o.out, out);
    return 0;
  } catch (const DomainError& e) {
    error_record(err, e.code(), e.what());
    return 1;
  } catch (const ValidationError& e) {
    error_record(err, e.code(), e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    error_record(err, "json", e.what());
    return 2;
  } catch (const std::exception& e) {
    error_record(err, "internal", e.what());
    return 2;
  }
}

}  // namespace thermocone::cli
