#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "odx/candidates.hpp"
#include "odx/graph.hpp"
#include "odx/objective.hpp"
#include "odx/rational.hpp"

namespace odx {

enum class SweepParameter { kDMax, kEta, kAlpha, kOmega };

const char* to_string(SweepParameter parameter) noexcept;
SweepParameter parse_sweep_parameter(const std::string& text);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kDMax;
  Rational from = 0;
  Rational to = 0;
  Rational step = 1;

  // Throws Error(kInvalidArgument) unless from <= to and step > 0.
  void validate() const;
  std::vector<Rational> points() const;
};

// Objective costs of the four reference strategies on one graph. An edgeless
// graph costs zero under every strategy.
struct StrategyCosts {
  Rational optimal;
  Rational monolog1;
  Rational monolog2;
  Rational bidirectional;
};

StrategyCosts strategy_costs(const ExchangeGraph& graph, const Objective& objective);

struct SweepRow {
  Rational value;
  StrategyCosts costs;
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

struct SweepReport {
  SweepParameter parameter = SweepParameter::kDMax;
  std::vector<SweepRow> rows;
  // Candidate sets are nested along the sweep (growing with d_max, shrinking
  // with eta and alpha).
  bool nested = true;
  std::string nesting_note;
};

// d_max or eta sweep over two trajectories.
SweepReport sweep_geometric(const Trajectory& t1, const Trajectory& t2, const GeometryParams& base,
                            const SweepSpec& spec, const Objective& objective);
// alpha sweep over an appearance score list.
SweepReport sweep_appearance(const std::vector<Score>& scores, const std::vector<Rational>& v1_weights,
                             const std::vector<Rational>& v2_weights, const AppearanceParams& base,
                             const SweepSpec& spec, const Objective& objective);
// omega sweep on a fixed graph (the objective is treated as P3).
SweepReport sweep_omega(const ExchangeGraph& graph, const SweepSpec& spec, const Objective& objective);

std::string sweep_csv(const SweepReport& report);
// gnuplot inline data block named `$<name>`.
std::string sweep_gnuplot(const SweepReport& report, const std::string& name);

}  // namespace odx
