#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cutin/geometry.hpp"

namespace cutin {

/// One vehicle observation at a frame.
struct Detection {
  int frame_idx = 0;
  int64_t timestamp_ms = 0;
  BoundingBox box;
  double confidence = 1.0;
};

/// Time-ordered observations of one target. frame_idx strictly increasing,
/// never empty once validated.
struct Track {
  int target_id = 0;
  std::vector<Detection> observations;

  size_t size() const { return observations.size(); }
  const Detection& front() const { return observations.front(); }
  const Detection& back() const { return observations.back(); }
};

/// Per-scene geometry: image dimensions, frame rate, the safety-field
/// polygon, and the ego lane's horizontal extent in image coordinates.
struct SceneMeta {
  double image_width = 1280.0;
  double image_height = 720.0;
  double fps = 30.0;
  Polygon safety_field;
  double ego_lane_x_min = 500.0;
  double ego_lane_x_max = 780.0;
};

/// Default safety field: the isosceles shape with base the bottom image edge
/// across the ego lane and apex at 55% image height on the lane midline.
Polygon default_safety_field(double image_width, double image_height,
                             double ego_lane_x_min, double ego_lane_x_max);

enum class ClassSet {
  CutInLanePass,       // {CutIn, LanePass}
  SidedCutInLanePass,  // {LeftCutIn, RightCutIn, LanePass}
  LaneChange,          // {LeftLaneChange, RightLaneChange, NoLaneChange}
};

int class_count(ClassSet set);
std::string class_set_name(ClassSet set);
ClassSet parse_class_set(std::string_view name);
const std::vector<std::string>& class_names(ClassSet set);

/// A label within a declared class set. index is the position within the
/// set's class list (the order used for model outputs and confusion rows).
struct ManeuverClass {
  ClassSet set = ClassSet::CutInLanePass;
  int index = 0;

  std::string name() const { return class_names(set)[static_cast<size_t>(index)]; }
  bool operator==(const ManeuverClass&) const = default;

  static ManeuverClass cut_in() { return {ClassSet::CutInLanePass, 0}; }
  static ManeuverClass lane_pass() { return {ClassSet::CutInLanePass, 1}; }
  static ManeuverClass left_cut_in() { return {ClassSet::SidedCutInLanePass, 0}; }
  static ManeuverClass right_cut_in() { return {ClassSet::SidedCutInLanePass, 1}; }
  static ManeuverClass sided_lane_pass() { return {ClassSet::SidedCutInLanePass, 2}; }
};

ManeuverClass parse_label(std::string_view name, ClassSet set);

/// Collapse a sided cut-in/lane-pass label to the 2-class set. Identity for
/// labels already in the 2-class set.
ManeuverClass collapse_to_two_class(const ManeuverClass& label);

/// One labeled 2-second action window for a single target vehicle.
struct LabeledClip {
  std::string clip_id;
  SceneMeta scene;
  Track track;
  ManeuverClass label;
  int64_t duration_ms = 0;
};

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  uint64_t seed = 0;
};

/// Parse and validate a clip from its manifest (key/value text) and its
/// observation table (CSV). Throws ParseError with a line number on
/// malformed content and ValidationError on violated invariants.
LabeledClip parse_clip(std::string_view manifest_text, std::string_view observations_text);

std::string serialize_manifest(const LabeledClip& clip);
std::string serialize_observations(const Track& track);

/// Stratified deterministic split. Each class is shuffled and cut
/// independently with the same ratios: floor(n*r_train) to train,
/// floor(n*r_val) to val, remainder to test.
DatasetSplit split_dataset(const std::vector<LabeledClip>& clips,
                           double r_train, double r_val, double r_test, uint64_t seed);

struct LabelResult {
  ManeuverClass label;                 // CutIn or LanePass (2-class set)
  int safety_entry_frame = 0;          // frame_idx of first safety-field overlap
  std::optional<int> lane_entry_frame; // frame_idx of first full-body lane entry (cut-in only)
};

/// Apply the safety-field labeling rule: cut-in iff the box overlaps the
/// safety field at some frame and a later box lies fully inside the ego
/// lane's horizontal extent; lane-pass iff it overlaps but never fully
/// enters. Throws ValidationError when the track never touches the field.
LabelResult label_candidate(const Track& track, const SceneMeta& scene);

}  // namespace cutin
