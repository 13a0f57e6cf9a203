#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "cutin/trackdata.hpp"

namespace cutin {

struct TrackerConfig {
  double iou_threshold = 0.3;
  int min_hits = 3;
  int max_age = 5;
  double process_noise_scale = 1.0;
  double measurement_noise_scale = 1.0;

  void validate() const;
};

/// Constant-velocity filter state over (cx, cy, w, h) and their per-frame
/// velocities.
struct KalmanState {
  Eigen::Matrix<double, 8, 1> mean = Eigen::Matrix<double, 8, 1>::Zero();
  Eigen::Matrix<double, 8, 8> covariance = Eigen::Matrix<double, 8, 8>::Zero();

  BoundingBox box() const { return {mean(0), mean(1), mean(2), mean(3)}; }
};

/// State initialized on a first detection: zero velocity, broad velocity
/// uncertainty so the first updates pin velocity from the data.
KalmanState kalman_init(const BoundingBox& z, const TrackerConfig& config);

KalmanState kalman_predict(const KalmanState& state, const TrackerConfig& config);

/// Linear measurement update on (cx, cy, w, h). Throws NumericalError when
/// the innovation covariance is not positive definite; callers drop the
/// update and keep the prior.
KalmanState kalman_update(const KalmanState& state, const BoundingBox& z,
                          const TrackerConfig& config);

enum class TrackStatus { Tentative, Confirmed, Dead };

struct TrackHypothesis {
  int target_id = 0;
  KalmanState state;
  int age = 0;     // frames since creation
  int hits = 0;    // matched updates
  int misses = 0;  // consecutive unmatched frames
  TrackStatus status = TrackStatus::Tentative;
  std::vector<Detection> history;  // posterior boxes at matched frames
};

/// Minimum-cost assignment (Hungarian algorithm with potentials, O(n^3)).
/// Returns min(rows, cols) (row, col) pairs. Throws ValidationError on
/// non-finite cost entries.
std::vector<std::pair<int, int>> hungarian(const Eigen::MatrixXd& cost);

struct Association {
  std::vector<std::pair<int, int>> matches;  // (track index, detection index)
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
};

/// Hungarian on 1-IoU between predicted track boxes and detections, then
/// gate: pairs below the IoU threshold are demoted to unmatched.
Association associate(const std::vector<TrackHypothesis>& tracks,
                      const std::vector<Detection>& detections, const TrackerConfig& config);

/// Stateful SORT-style tracker; drive one instance from one logical thread.
class MultiObjectTracker {
public:
  explicit MultiObjectTracker(const TrackerConfig& config);

  /// Advance one frame: predict, associate, update, spawn, age out.
  void step(const std::vector<Detection>& detections);

  /// All tracks that ever reached Confirmed, with Kalman-corrected boxes at
  /// their matched frames.
  std::vector<Track> confirmed_tracks() const;

  const std::vector<TrackHypothesis>& hypotheses() const { return hypotheses_; }

private:
  TrackerConfig config_;
  std::vector<TrackHypothesis> live_;
  std::vector<TrackHypothesis> hypotheses_;  // live + finished, in id order
  int next_id_ = 1;
};

/// Run a whole detection sequence through a fresh tracker.
std::vector<Track> track_sequence(const std::vector<std::vector<Detection>>& frames,
                                  const TrackerConfig& config);

}  // namespace cutin
