#include "odx/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "json_text.hpp"
#include "odx/error.hpp"

namespace odx {
namespace {

constexpr double kOrthonormalTolerance = 1e-9;
constexpr double kKittiTolerance = 1e-3;
constexpr int kQuadratureRows = 2048;

double orthonormality_error(const Eigen::Matrix3d& r) {
  return (r.transpose() * r - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

struct Sector {
  double px, py;  // apex in the ground plane
  double lo_x, lo_y;  // boundary ray at heading - half_angle
  double hi_x, hi_y;  // boundary ray at heading + half_angle
  double range;
};

Sector make_sector(const Pose& pose, double half_angle, double range) {
  const Eigen::Vector3d axis = pose.rotation.col(2);
  double hx = axis.x(), hy = axis.z();
  const double norm = std::hypot(hx, hy);
  if (norm > 0) {
    hx /= norm;
    hy /= norm;
  } else {
    hx = 0.0;  // looking straight up or down; fall back to +z
    hy = 1.0;
  }
  const double c = std::cos(half_angle), s = std::sin(half_angle);
  return Sector{pose.position.x(), pose.position.z(), c * hx + s * hy, -s * hx + c * hy,
                c * hx - s * hy, s * hx + c * hy, range};
}

struct Interval {
  double lo, hi;
  bool empty() const { return !(lo < hi); }
};

// Constrain x' = x - px by a * x' + b >= 0.
void clip(Interval& iv, double px, double a, double b) {
  if (a > 0) {
    iv.lo = std::max(iv.lo, px - b / a);
  } else if (a < 0) {
    iv.hi = std::min(iv.hi, px - b / a);
  } else if (b < 0) {
    iv.hi = iv.lo;
  }
}

// Chord of a convex sector along the horizontal line at height y.
Interval chord(const Sector& s, double y) {
  const double dy = y - s.py;
  if (std::abs(dy) >= s.range) return {0.0, 0.0};
  const double half = std::sqrt(s.range * s.range - dy * dy);
  Interval iv{s.px - half, s.px + half};
  // cross(lo, q - p) >= 0 and cross(q - p, hi) >= 0
  clip(iv, s.px, -s.lo_y, s.lo_x * dy);
  clip(iv, s.px, s.hi_y, -dy * s.hi_x);
  return iv;
}

double intersection_area(const Sector& a, const Sector& b) {
  const double y0 = std::max(a.py - a.range, b.py - b.range);
  const double y1 = std::min(a.py + a.range, b.py + b.range);
  if (!(y0 < y1)) return 0.0;
  const double step = (y1 - y0) / kQuadratureRows;
  double total = 0.0;
  for (int k = 0; k < kQuadratureRows; ++k) {
    const double y = y0 + (k + 0.5) * step;
    const Interval ia = chord(a, y);
    const Interval ib = chord(b, y);
    const Interval both{std::max(ia.lo, ib.lo), std::min(ia.hi, ib.hi)};
    if (!both.empty()) total += both.hi - both.lo;
  }
  return total * step;
}

void check_half_angle(double half_angle) {
  if (!(half_angle > 0.0) || half_angle > std::numbers::pi / 2) {
    throw Error(ErrorKind::kInvalidArgument, "fov half-angle must lie in (0, pi/2]");
  }
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

[[noreturn]] void line_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line + 1) + ": " + what);
}

}  // namespace

Trajectory::Trajectory(std::vector<Pose> poses) : poses_(std::move(poses)) {
  for (std::size_t i = 0; i < poses_.size(); ++i) {
    if (i > 0 && poses_[i].id <= poses_[i - 1].id) {
      throw Error(ErrorKind::kInvalidArgument, "trajectory ids must be strictly increasing");
    }
    const Eigen::Matrix3d& r = poses_[i].rotation;
    if (!r.allFinite() || !poses_[i].position.allFinite() ||
        orthonormality_error(r) > kOrthonormalTolerance || r.determinant() < 0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "pose " + std::to_string(poses_[i].id) + " has a non-orthonormal rotation");
    }
  }
}

Trajectory Trajectory::subsample(std::size_t rate_divisor) const {
  if (rate_divisor == 0) throw Error(ErrorKind::kInvalidArgument, "rate divisor must be positive");
  Trajectory out;
  for (std::size_t i = 0; i < poses_.size(); i += rate_divisor) out.poses_.push_back(poses_[i]);
  return out;
}

Trajectory Trajectory::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > poses_.size()) throw Error(ErrorKind::kInvalidArgument, "slice out of range");
  Trajectory out;
  out.poses_.assign(poses_.begin() + static_cast<std::ptrdiff_t>(begin),
                    poses_.begin() + static_cast<std::ptrdiff_t>(end));
  return out;
}

void GeometryParams::validate() const {
  if (!(d_max > 0.0)) throw Error(ErrorKind::kInvalidArgument, "d_max must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "eta must lie in [0, 1]");
  if (rate_divisor == 0) throw Error(ErrorKind::kInvalidArgument, "rate divisor must be positive");
  if (!(fov_range >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "fov range must be non-negative");
  check_half_angle(fov_half_angle);
}

double fov_overlap(const Pose& a, const Pose& b, double fov_half_angle, double fov_range) {
  check_half_angle(fov_half_angle);
  if (!(fov_range > 0.0)) return 0.0;
  const Sector sa = make_sector(a, fov_half_angle, fov_range);
  const Sector sb = make_sector(b, fov_half_angle, fov_range);
  if (std::hypot(sa.px - sb.px, sa.py - sb.py) >= 2 * fov_range) return 0.0;
  const double normalizer = std::max(intersection_area(sa, sa), intersection_area(sb, sb));
  if (!(normalizer > 0.0)) return 0.0;
  return std::clamp(intersection_area(sa, sb) / normalizer, 0.0, 1.0);
}

std::vector<Rational> scan_weights(std::span<const std::uint64_t> feature_counts, std::uint64_t descriptor_bytes) {
  std::vector<Rational> out;
  out.reserve(feature_counts.size());
  for (std::uint64_t c : feature_counts) out.emplace_back(BigInt(c) * descriptor_bytes);
  return out;
}

std::vector<Rational> scan_weights(const Trajectory& trajectory, std::uint64_t descriptor_bytes) {
  std::vector<std::uint64_t> counts;
  for (const Pose& p : trajectory.poses()) counts.push_back(p.feature_count);
  return scan_weights(counts, descriptor_bytes);
}

GeometricCandidatePool::GeometricCandidatePool(const Trajectory& t1, const Trajectory& t2,
                                               const GeometryParams& base, double max_distance)
    : base_(base), max_distance_(max_distance) {
  base_.validate();
  if (t1.empty() || t2.empty()) throw Error(ErrorKind::kEmptyTrajectory, "both trajectories must be non-empty");
  t1_ = t1.subsample(base_.rate_divisor);
  t2_ = t2.subsample(base_.rate_divisor);
  const auto p1 = t1_.poses();
  const auto p2 = t2_.poses();
  for (std::size_t i = 0; i < p1.size(); ++i) {
    for (std::size_t j = 0; j < p2.size(); ++j) {
      const double d = (p1[i].position - p2[j].position).norm();
      if (d <= max_distance_) {
        pairs_.push_back({i, j, d, fov_overlap(p1[i], p2[j], base_.fov_half_angle, base_.fov_range)});
      }
    }
  }
}

ExchangeGraph GeometricCandidatePool::select(double d_max, double eta) const {
  if (d_max > max_distance_) {
    throw Error(ErrorKind::kInvalidArgument, "d_max exceeds the candidate pool's distance bound");
  }
  std::vector<Vertex> v1, v2;
  const std::vector<Rational> w1 = scan_weights(t1_, base_.descriptor_bytes);
  const std::vector<Rational> w2 = scan_weights(t2_, base_.descriptor_bytes);
  for (std::size_t i = 0; i < t1_.size(); ++i) v1.push_back({{Side::kRobot1, t1_.poses()[i].id}, w1[i], {}});
  for (std::size_t j = 0; j < t2_.size(); ++j) v2.push_back({{Side::kRobot2, t2_.poses()[j].id}, w2[j], {}});
  std::vector<EdgeSpec> edges;
  for (const Pair& p : pairs_) {
    if (p.distance <= d_max && p.overlap >= eta) {
      edges.push_back({t1_.poses()[p.i].id, t2_.poses()[p.j].id, Rational(1)});
    }
  }
  return ExchangeGraph::build(std::move(v1), std::move(v2), edges);
}

ExchangeGraph build_geometric(const Trajectory& t1, const Trajectory& t2, const GeometryParams& params) {
  params.validate();
  return GeometricCandidatePool(t1, t2, params, params.d_max).select(params.d_max, params.eta);
}

void AppearanceParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "alpha must lie in [0, 1]");
  if (top_k == 0) throw Error(ErrorKind::kInvalidArgument, "top_k must be positive");
}

ExchangeGraph build_appearance(std::span<const Score> scores, const std::vector<Rational>& v1_weights,
                               const std::vector<Rational>& v2_weights, const AppearanceParams& params) {
  params.validate();
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const Score& s : scores) {
    if (!(s.score >= 0.0 && s.score <= 1.0)) {
      throw Error(ErrorKind::kScoreOutOfRange, "score " + std::to_string(s.score) + " outside [0, 1]");
    }
    if (s.u >= v1_weights.size() || s.v >= v2_weights.size()) {
      throw Error(ErrorKind::kIndexOutOfRange, "score (" + std::to_string(s.u) + ", " + std::to_string(s.v) +
                                                   ") refers to a missing pose");
    }
    if (!seen.emplace(s.u, s.v).second) {
      throw Error(ErrorKind::kDuplicateEdge, "score pair (" + std::to_string(s.u) + ", " + std::to_string(s.v) +
                                                 ") listed twice");
    }
  }

  // Each query keeps its best candidates: higher score first, lower index on ties.
  auto top_k = [&](bool from_robot1) {
    std::vector<const Score*> sorted;
    for (const Score& s : scores) {
      if (s.score > params.alpha) sorted.push_back(&s);
    }
    auto query = [&](const Score* s) { return from_robot1 ? s->u : s->v; };
    auto target = [&](const Score* s) { return from_robot1 ? s->v : s->u; };
    std::sort(sorted.begin(), sorted.end(), [&](const Score* a, const Score* b) {
      if (query(a) != query(b)) return query(a) < query(b);
      if (a->score != b->score) return a->score > b->score;
      return target(a) < target(b);
    });
    std::set<std::pair<std::uint64_t, std::uint64_t>> kept;
    std::size_t taken = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (k == 0 || query(sorted[k]) != query(sorted[k - 1])) taken = 0;
      if (taken < params.top_k) {
        kept.emplace(sorted[k]->u, sorted[k]->v);
        ++taken;
      }
    }
    return kept;
  };

  std::set<std::pair<std::uint64_t, std::uint64_t>> chosen = top_k(true);
  if (params.symmetric) {
    auto reverse = top_k(false);
    chosen.insert(reverse.begin(), reverse.end());
  }
  std::vector<EdgeSpec> edges;
  edges.reserve(chosen.size());
  for (const auto& [u, v] : chosen) edges.push_back({u, v, Rational(1)});
  return build_graph(v1_weights, v2_weights, edges);
}

std::vector<Pose> parse_kitti_poses(const std::string& text) {
  std::vector<Pose> poses;
  const auto lines = data_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::istringstream in(lines[n]);
    double m[12];
    for (double& x : m) {
      if (!(in >> x)) line_error(n, "expected 12 numbers");
    }
    std::string extra;
    if (in >> extra) line_error(n, "more than 12 numbers");
    Pose p;
    p.id = n;
    p.timestamp = n;
    Eigen::Matrix3d r;
    r << m[0], m[1], m[2], m[4], m[5], m[6], m[8], m[9], m[10];
    p.position = Eigen::Vector3d(m[3], m[7], m[11]);
    if (!r.allFinite() || !p.position.allFinite()) line_error(n, "non-finite value");
    if (orthonormality_error(r) > kKittiTolerance || r.determinant() <= 0) line_error(n, "rotation is not orthonormal");
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    p.rotation = svd.matrixU() * svd.matrixV().transpose();
    poses.push_back(std::move(p));
  }
  return poses;
}

std::vector<Pose> load_kitti_poses(const std::string& path) { return parse_kitti_poses(detail::read_file(path)); }

std::vector<std::uint64_t> parse_feature_counts(const std::string& text) {
  std::vector<std::uint64_t> counts;
  const auto lines = data_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::istringstream in(lines[n]);
    long long value = -1;
    std::string extra;
    if (!(in >> value) || value < 0 || (in >> extra)) line_error(n, "expected one non-negative integer");
    counts.push_back(static_cast<std::uint64_t>(value));
  }
  return counts;
}

std::vector<std::uint64_t> load_feature_counts(const std::string& path) {
  return parse_feature_counts(detail::read_file(path));
}

Trajectory make_trajectory(std::vector<Pose> poses, std::span<const std::uint64_t> feature_counts) {
  if (poses.size() != feature_counts.size()) {
    throw Error(ErrorKind::kInvalidArgument, "feature counts (" + std::to_string(feature_counts.size()) +
                                                 ") do not match poses (" + std::to_string(poses.size()) + ")");
  }
  for (std::size_t i = 0; i < poses.size(); ++i) poses[i].feature_count = feature_counts[i];
  return Trajectory(std::move(poses));
}

std::vector<Score> parse_scores(const std::string& text) {
  std::vector<Score> scores;
  const auto lines = data_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::istringstream in(lines[n]);
    long long u = -1, v = -1;
    Score s;
    std::string extra;
    if (!(in >> u >> v >> s.score) || (in >> extra)) line_error(n, "expected 'u_index v_index score'");
    if (u < 0 || v < 0) line_error(n, "negative index");
    s.u = static_cast<std::uint64_t>(u);
    s.v = static_cast<std::uint64_t>(v);
    scores.push_back(s);
  }
  return scores;
}

std::vector<Score> load_scores(const std::string& path) { return parse_scores(detail::read_file(path)); }

}  // namespace odx
