#include "odx/sweep.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>

#include "odx/error.hpp"
#include "odx/policy.hpp"
#include "odx/solver.hpp"

namespace odx {

const char* to_string(SweepParameter parameter) noexcept {
  switch (parameter) {
    case SweepParameter::kDMax: return "dmax";
    case SweepParameter::kEta: return "eta";
    case SweepParameter::kAlpha: return "alpha";
    case SweepParameter::kOmega: return "omega";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(const std::string& text) {
  if (text == "dmax" || text == "d_max") return SweepParameter::kDMax;
  if (text == "eta") return SweepParameter::kEta;
  if (text == "alpha") return SweepParameter::kAlpha;
  if (text == "omega") return SweepParameter::kOmega;
  throw Error(ErrorKind::kInvalidArgument, "sweep parameter must be dmax, eta, alpha or omega");
}

void SweepSpec::validate() const {
  if (from > to) throw Error(ErrorKind::kInvalidArgument, "sweep requires from <= to");
  if (step <= 0) throw Error(ErrorKind::kInvalidArgument, "sweep step must be positive");
}

std::vector<Rational> SweepSpec::points() const {
  validate();
  std::vector<Rational> out;
  for (Rational x = from; x <= to; x += step) out.push_back(x);
  return out;
}

StrategyCosts strategy_costs(const ExchangeGraph& graph, const Objective& objective) {
  StrategyCosts costs{0, 0, 0, 0};
  if (graph.edge_count() == 0) return costs;
  costs.optimal = solve(graph, objective).optimal_cost;
  costs.monolog1 = objective_cost(graph, monolog(graph, Side::kRobot1), objective);
  costs.monolog2 = objective_cost(graph, monolog(graph, Side::kRobot2), objective);
  costs.bidirectional = objective_cost(graph, Policy::ones(graph.vertex_count()), objective);
  return costs;
}

namespace {

using EdgeKeys = std::set<std::pair<std::uint64_t, std::uint64_t>>;

EdgeKeys edge_keys(const ExchangeGraph& graph) {
  EdgeKeys keys;
  for (const Edge& e : graph.edges()) keys.emplace(graph.vertex(e.u).id.index, graph.vertex(e.v).id.index);
  return keys;
}

// `grows` tells whether the candidate set should grow with the parameter.
SweepReport run_sweep(SweepParameter parameter, const SweepSpec& spec, bool grows,
                      const std::function<ExchangeGraph(const Rational&)>& graph_at,
                      const std::function<Objective(const Rational&)>& objective_at) {
  SweepReport report;
  report.parameter = parameter;
  EdgeKeys previous;
  bool first = true;
  for (const Rational& value : spec.points()) {
    const ExchangeGraph graph = graph_at(value);
    EdgeKeys keys = edge_keys(graph);
    if (!first) {
      const EdgeKeys& small = grows ? previous : keys;
      const EdgeKeys& large = grows ? keys : previous;
      if (!std::includes(large.begin(), large.end(), small.begin(), small.end()) && report.nested) {
        report.nested = false;
        report.nesting_note = std::string("candidate sets not nested at ") + to_string(parameter) + " = " +
                              to_string(value);
      }
    }
    report.rows.push_back({value, strategy_costs(graph, objective_at(value)), graph.vertex_count(),
                           graph.edge_count()});
    previous = std::move(keys);
    first = false;
  }
  if (report.nested) report.nesting_note = "candidate sets nested along the sweep";
  return report;
}

}  // namespace

SweepReport sweep_geometric(const Trajectory& t1, const Trajectory& t2, const GeometryParams& base,
                            const SweepSpec& spec, const Objective& objective) {
  spec.validate();
  objective.validate();
  if (spec.parameter != SweepParameter::kDMax && spec.parameter != SweepParameter::kEta) {
    throw Error(ErrorKind::kInvalidArgument, "geometric sweeps vary dmax or eta");
  }
  const bool over_distance = spec.parameter == SweepParameter::kDMax;
  GeometryParams params = base;
  const double max_distance = over_distance ? to_double(spec.to) : base.d_max;
  if (over_distance) params.d_max = std::max(max_distance, to_double(spec.from));
  if (over_distance && !(to_double(spec.from) > 0)) {
    throw Error(ErrorKind::kInvalidArgument, "d_max sweep must start above zero");
  }
  if (!over_distance && (spec.from < 0 || spec.to > 1)) {
    throw Error(ErrorKind::kInvalidArgument, "eta sweep must stay within [0, 1]");
  }
  const GeometricCandidatePool pool(t1, t2, params, max_distance);
  return run_sweep(
      spec.parameter, spec, over_distance,
      [&](const Rational& value) {
        return over_distance ? pool.select(to_double(value), base.eta) : pool.select(base.d_max, to_double(value));
      },
      [&](const Rational&) { return objective; });
}

SweepReport sweep_appearance(const std::vector<Score>& scores, const std::vector<Rational>& v1_weights,
                             const std::vector<Rational>& v2_weights, const AppearanceParams& base,
                             const SweepSpec& spec, const Objective& objective) {
  spec.validate();
  objective.validate();
  if (spec.parameter != SweepParameter::kAlpha) {
    throw Error(ErrorKind::kInvalidArgument, "appearance sweeps vary alpha");
  }
  return run_sweep(
      spec.parameter, spec, false,
      [&](const Rational& value) {
        AppearanceParams params = base;
        params.alpha = to_double(value);
        return build_appearance(scores, v1_weights, v2_weights, params);
      },
      [&](const Rational&) { return objective; });
}

SweepReport sweep_omega(const ExchangeGraph& graph, const SweepSpec& spec, const Objective& objective) {
  spec.validate();
  if (spec.parameter != SweepParameter::kOmega) throw Error(ErrorKind::kInvalidArgument, "expected an omega sweep");
  if (spec.from < 0) throw Error(ErrorKind::kNegativeWeight, "omega must be non-negative");
  return run_sweep(
      spec.parameter, spec, true, [&](const Rational&) { return graph; },
      [&](const Rational& value) { return Objective::p3(objective.alpha1, objective.alpha2, value); });
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "param_value,optimal,monolog1,monolog2,bidirectional,vertices,edges\n";
  for (const SweepRow& r : report.rows) {
    out << to_string(r.value) << ',' << to_string(r.costs.optimal) << ',' << to_string(r.costs.monolog1) << ','
        << to_string(r.costs.monolog2) << ',' << to_string(r.costs.bidirectional) << ',' << r.vertices << ','
        << r.edges << '\n';
  }
  return out.str();
}

std::string sweep_gnuplot(const SweepReport& report, const std::string& name) {
  std::ostringstream out;
  out << '$' << name << " << EOD\n";
  out << "# " << to_string(report.parameter) << " optimal monolog1 monolog2 bidirectional vertices edges\n";
  for (const SweepRow& r : report.rows) {
    out << to_double(r.value) << ' ' << to_double(r.costs.optimal) << ' ' << to_double(r.costs.monolog1) << ' '
        << to_double(r.costs.monolog2) << ' ' << to_double(r.costs.bidirectional) << ' ' << r.vertices << ' '
        << r.edges << '\n';
  }
  out << "EOD\n";
  return out.str();
}

}  // namespace odx
