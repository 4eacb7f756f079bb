#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "odx/graph.hpp"
#include "odx/rational.hpp"

namespace odx {

// Poses follow the KITTI camera convention: x right, y down, z forward. The
// ground plane is x-z and the optical axis is the rotation's third column.
struct Pose {
  std::uint64_t id = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  std::uint64_t feature_count = 0;
  std::uint64_t timestamp = 0;
};

class Trajectory {
 public:
  Trajectory() = default;
  // Throws Error(kInvalidArgument) if ids are not strictly increasing or a
  // rotation is not orthonormal within 1e-9.
  explicit Trajectory(std::vector<Pose> poses);

  std::span<const Pose> poses() const { return poses_; }
  std::size_t size() const { return poses_.size(); }
  bool empty() const { return poses_.empty(); }

  // Keeps poses 0, r, 2r, ... (ceil(n / r) of them).
  Trajectory subsample(std::size_t rate_divisor) const;
  // Poses [begin, end), ids preserved.
  Trajectory slice(std::size_t begin, std::size_t end) const;

 private:
  std::vector<Pose> poses_;
};

struct GeometryParams {
  double d_max = 30.0;
  double eta = 0.4;
  std::size_t rate_divisor = 1;
  double fov_half_angle = 0.7;
  double fov_range = 30.0;
  std::uint64_t descriptor_bytes = 32;

  // Throws Error(kInvalidArgument).
  void validate() const;
};

// Fraction of one field-of-view sector covered by the other. Sectors live in
// the ground plane with apex at the pose, bisected by the projected optical
// axis. Evaluated by fixed-resolution row quadrature with exact chord
// lengths, so the result is reproducible and exactly symmetric in (a, b).
// Half-angle must lie in (0, pi/2].
double fov_overlap(const Pose& a, const Pose& b, double fov_half_angle, double fov_range);

// Throws Error(kEmptyTrajectory).
ExchangeGraph build_geometric(const Trajectory& t1, const Trajectory& t2, const GeometryParams& params);

// Pairwise gate inputs for every pose pair within an upper distance bound,
// so parameter sweeps reuse the geometry. Overlaps are computed on demand.
class GeometricCandidatePool {
 public:
  GeometricCandidatePool(const Trajectory& t1, const Trajectory& t2, const GeometryParams& base,
                         double max_distance);

  // Graph for a (d_max, eta) point; d_max must not exceed the pool bound.
  ExchangeGraph select(double d_max, double eta) const;

 private:
  struct Pair {
    std::size_t i, j;
    double distance;
    double overlap;
  };

  Trajectory t1_, t2_;
  GeometryParams base_;
  double max_distance_;
  std::vector<Pair> pairs_;
};

struct Score {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  double score = 0.0;
};

struct AppearanceParams {
  double alpha = 0.3;
  std::size_t top_k = 2;
  // Also query from robot 2 against robot 1 and take the union.
  bool symmetric = false;

  void validate() const;
};

// Per query vertex, the top_k candidates with score > alpha; ties go to the
// lower index. Throws Error(kScoreOutOfRange), kIndexOutOfRange or
// kDuplicateEdge (repeated score pair).
ExchangeGraph build_appearance(std::span<const Score> scores, const std::vector<Rational>& v1_weights,
                               const std::vector<Rational>& v2_weights, const AppearanceParams& params);

// KITTI odometry ground truth: 12 numbers per line (row-major 3x4 [R|t]).
// Rotations are re-projected onto SO(3); rows more than 1e-3 from
// orthonormal are rejected (kParse).
std::vector<Pose> parse_kitti_poses(const std::string& text);
std::vector<Pose> load_kitti_poses(const std::string& path);
std::vector<std::uint64_t> parse_feature_counts(const std::string& text);
std::vector<std::uint64_t> load_feature_counts(const std::string& path);
// Attaches counts to poses (sizes must match, kInvalidArgument otherwise).
Trajectory make_trajectory(std::vector<Pose> poses, std::span<const std::uint64_t> feature_counts);

std::vector<Score> parse_scores(const std::string& text);
std::vector<Score> load_scores(const std::string& path);

// w_s = feature_count * descriptor_bytes.
std::vector<Rational> scan_weights(const Trajectory& trajectory, std::uint64_t descriptor_bytes = 32);
std::vector<Rational> scan_weights(std::span<const std::uint64_t> feature_counts, std::uint64_t descriptor_bytes = 32);

}  // namespace odx
