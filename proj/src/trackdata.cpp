#include "cutin/trackdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "cutin/common.hpp"

namespace cutin {

namespace {

const std::vector<std::string> kTwoClassNames = {"CutIn", "LanePass"};
const std::vector<std::string> kSidedNames = {"LeftCutIn", "RightCutIn", "LanePass"};
const std::vector<std::string> kLaneChangeNames = {"LeftLaneChange", "RightLaneChange",
                                                   "NoLaneChange"};

std::string format_pixels(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, int line, const std::string& what) {
  try {
    size_t pos = 0;
    const std::string str(s);
    const double v = std::stod(str, &pos);
    if (pos != str.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw ParseError("malformed " + what + " '" + std::string(s) + "'", line);
  }
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

int class_count(ClassSet set) {
  return set == ClassSet::CutInLanePass ? 2 : 3;
}

std::string class_set_name(ClassSet set) {
  switch (set) {
    case ClassSet::CutInLanePass: return "cutin_lanepass";
    case ClassSet::SidedCutInLanePass: return "cutin_lanepass_lr";
    case ClassSet::LaneChange: return "lanechange";
  }
  return "?";
}

ClassSet parse_class_set(std::string_view name) {
  if (name == "cutin_lanepass") return ClassSet::CutInLanePass;
  if (name == "cutin_lanepass_lr") return ClassSet::SidedCutInLanePass;
  if (name == "lanechange") return ClassSet::LaneChange;
  throw ValidationError("unknown class set '" + std::string(name) + "'");
}

const std::vector<std::string>& class_names(ClassSet set) {
  switch (set) {
    case ClassSet::CutInLanePass: return kTwoClassNames;
    case ClassSet::SidedCutInLanePass: return kSidedNames;
    case ClassSet::LaneChange: return kLaneChangeNames;
  }
  return kTwoClassNames;
}

ManeuverClass parse_label(std::string_view name, ClassSet set) {
  const auto& names = class_names(set);
  for (size_t i = 0; i < names.size(); ++i) {
    if (name == names[i]) return {set, static_cast<int>(i)};
  }
  throw ValidationError("label '" + std::string(name) + "' outside declared class set " +
                        class_set_name(set));
}

ManeuverClass collapse_to_two_class(const ManeuverClass& label) {
  if (label.set == ClassSet::CutInLanePass) return label;
  if (label.set == ClassSet::SidedCutInLanePass) {
    return label.index == 2 ? ManeuverClass::lane_pass() : ManeuverClass::cut_in();
  }
  throw ValidationError("class set mismatch: cannot collapse " + class_set_name(label.set) +
                        " to cutin_lanepass");
}

Polygon default_safety_field(double image_width, double image_height,
                             double ego_lane_x_min, double ego_lane_x_max) {
  (void)image_width;
  const double mid = (ego_lane_x_min + ego_lane_x_max) / 2.0;
  return {{ego_lane_x_min, image_height},
          {ego_lane_x_max, image_height},
          {mid, 0.55 * image_height}};
}

namespace {

void validate_scene(const SceneMeta& scene) {
  if (scene.image_width <= 0 || scene.image_height <= 0)
    throw ValidationError("image dimensions must be positive");
  if (scene.fps <= 0) throw ValidationError("fps must be positive");
  if (scene.safety_field.size() < 3)
    throw ValidationError("safety_field must have at least 3 vertices");
  for (const Vec2& v : scene.safety_field) {
    if (v.x < 0 || v.x > scene.image_width || v.y < 0 || v.y > scene.image_height)
      throw ValidationError("safety_field vertex outside image bounds");
  }
  if (!(scene.ego_lane_x_min < scene.ego_lane_x_max))
    throw ValidationError("ego_lane_x_range requires x_min < x_max");
}

void validate_clip(const LabeledClip& clip) {
  const double eps = 1e-6;
  if (clip.track.observations.size() < 15)
    throw ValidationError("fewer than 15 observations");
  int prev_frame = -1;
  int64_t prev_ts = -1;
  for (const Detection& d : clip.track.observations) {
    if (d.frame_idx < 0) throw ValidationError("negative frame index");
    if (d.timestamp_ms < 0) throw ValidationError("negative timestamp");
    if (prev_frame >= 0 && d.frame_idx <= prev_frame)
      throw ValidationError("non-monotonic frame index");
    if (prev_ts >= 0 && d.timestamp_ms <= prev_ts)
      throw ValidationError("non-monotonic timestamp");
    prev_frame = d.frame_idx;
    prev_ts = d.timestamp_ms;
    if (d.box.w <= 0 || d.box.h <= 0) throw ValidationError("non-positive box dimensions");
    if (d.confidence < 0 || d.confidence > 1) throw ValidationError("confidence outside [0,1]");
    if (d.box.left() < -eps || d.box.right() > clip.scene.image_width + eps ||
        d.box.top() < -eps || d.box.bottom() > clip.scene.image_height + eps)
      throw ValidationError("box outside image bounds");
  }
  // The 2-second action-window contract applies to cut-in/lane-pass clips.
  if (clip.label.set != ClassSet::LaneChange) {
    const int64_t frame_period = std::llround(1000.0 / clip.scene.fps);
    if (std::llabs(clip.duration_ms - 2000) > frame_period)
      throw ValidationError("clip duration " + std::to_string(clip.duration_ms) +
                            "ms is not a 2-second window");
  }
}

}  // namespace

LabeledClip parse_clip(std::string_view manifest_text, std::string_view observations_text) {
  LabeledClip clip;
  std::map<std::string, std::string> kv;
  {
    int line_no = 0;
    for (std::string_view line : split_on(manifest_text, '\n')) {
      ++line_no;
      line = trim(line);
      if (line.empty() || line.front() == '#') continue;
      const size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (kv.count(key)) throw ParseError("duplicate key '" + key + "'", line_no);
      kv[key] = value;
    }
  }
  auto require = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ValidationError("manifest missing key '" + key + "'");
    return it->second;
  };

  clip.clip_id = require("clip_id");
  clip.scene.image_width = parse_number(require("image_width"), 0, "image_width");
  clip.scene.image_height = parse_number(require("image_height"), 0, "image_height");
  clip.scene.fps = parse_number(require("fps"), 0, "fps");
  const ClassSet set = parse_class_set(require("class_set"));
  clip.label = parse_label(require("label"), set);

  for (std::string_view vertex : split_on(require("safety_field"), ';')) {
    const auto parts = split_on(vertex, ',');
    if (parts.size() != 2) throw ValidationError("safety_field vertex must be 'x,y'");
    clip.scene.safety_field.push_back({parse_number(trim(parts[0]), 0, "safety_field x"),
                                       parse_number(trim(parts[1]), 0, "safety_field y")});
  }
  {
    const auto parts = split_on(require("ego_lane_x_range"), ',');
    if (parts.size() != 2) throw ValidationError("ego_lane_x_range must be 'x_min,x_max'");
    clip.scene.ego_lane_x_min = parse_number(trim(parts[0]), 0, "ego_lane_x_min");
    clip.scene.ego_lane_x_max = parse_number(trim(parts[1]), 0, "ego_lane_x_max");
  }
  validate_scene(clip.scene);

  // Observation table.
  static const std::string kHeader = "frame_idx,timestamp_ms,target_id,cx,cy,w,h,confidence";
  {
    int line_no = 0;
    bool saw_header = false;
    bool saw_target = false;
    for (std::string_view line : split_on(observations_text, '\n')) {
      ++line_no;
      line = trim(line);
      if (line.empty()) continue;
      if (!saw_header) {
        if (line != kHeader) throw ParseError("expected header '" + kHeader + "'", line_no);
        saw_header = true;
        continue;
      }
      const auto cols = split_on(line, ',');
      if (cols.size() != 8) throw ParseError("expected 8 comma-separated fields", line_no);
      Detection d;
      d.frame_idx = static_cast<int>(parse_number(trim(cols[0]), line_no, "frame_idx"));
      d.timestamp_ms = static_cast<int64_t>(parse_number(trim(cols[1]), line_no, "timestamp_ms"));
      const int target_id = static_cast<int>(parse_number(trim(cols[2]), line_no, "target_id"));
      d.box.cx = parse_number(trim(cols[3]), line_no, "cx");
      d.box.cy = parse_number(trim(cols[4]), line_no, "cy");
      d.box.w = parse_number(trim(cols[5]), line_no, "w");
      d.box.h = parse_number(trim(cols[6]), line_no, "h");
      d.confidence = parse_number(trim(cols[7]), line_no, "confidence");
      if (!saw_target) {
        clip.track.target_id = target_id;
        saw_target = true;
      } else if (target_id != clip.track.target_id) {
        throw ParseError("clip observations must belong to a single target", line_no);
      }
      clip.track.observations.push_back(d);
    }
    if (!saw_header) throw ValidationError("empty observation table");
  }
  if (clip.track.observations.empty()) throw ValidationError("no observations");

  const int64_t frame_period = std::llround(1000.0 / clip.scene.fps);
  clip.duration_ms = clip.track.back().timestamp_ms - clip.track.front().timestamp_ms + frame_period;
  validate_clip(clip);
  return clip;
}

std::string serialize_manifest(const LabeledClip& clip) {
  std::ostringstream out;
  out << "clip_id = " << clip.clip_id << "\n";
  out << "image_width = " << format_pixels(clip.scene.image_width) << "\n";
  out << "image_height = " << format_pixels(clip.scene.image_height) << "\n";
  out << "fps = " << format_pixels(clip.scene.fps) << "\n";
  out << "label = " << clip.label.name() << "\n";
  out << "class_set = " << class_set_name(clip.label.set) << "\n";
  out << "safety_field = ";
  for (size_t i = 0; i < clip.scene.safety_field.size(); ++i) {
    if (i) out << ";";
    out << format_pixels(clip.scene.safety_field[i].x) << ","
        << format_pixels(clip.scene.safety_field[i].y);
  }
  out << "\n";
  out << "ego_lane_x_range = " << format_pixels(clip.scene.ego_lane_x_min) << ","
      << format_pixels(clip.scene.ego_lane_x_max) << "\n";
  return out.str();
}

std::string serialize_observations(const Track& track) {
  std::ostringstream out;
  out << "frame_idx,timestamp_ms,target_id,cx,cy,w,h,confidence\n";
  for (const Detection& d : track.observations) {
    out << d.frame_idx << "," << d.timestamp_ms << "," << track.target_id << ","
        << format_pixels(d.box.cx) << "," << format_pixels(d.box.cy) << ","
        << format_pixels(d.box.w) << "," << format_pixels(d.box.h) << ","
        << format_pixels(d.confidence) << "\n";
  }
  return out.str();
}

DatasetSplit split_dataset(const std::vector<LabeledClip>& clips,
                           double r_train, double r_val, double r_test, uint64_t seed) {
  if (clips.empty()) throw ConfigError("cannot split an empty clip set");
  if (r_train <= 0 || r_val <= 0 || r_test <= 0)
    throw ConfigError("split ratios must be positive");
  if (std::abs(r_train + r_val + r_test - 1.0) > 1e-9)
    throw ConfigError("split ratios must sum to 1");

  // Group clip ids per class; map keys give a stable class order.
  std::map<std::pair<int, int>, std::vector<std::string>> per_class;
  std::set<std::string> seen;
  for (const LabeledClip& c : clips) {
    if (!seen.insert(c.clip_id).second)
      throw ValidationError("duplicate clip_id '" + c.clip_id + "'");
    per_class[{static_cast<int>(c.label.set), c.label.index}].push_back(c.clip_id);
  }

  DatasetSplit out;
  out.seed = seed;
  for (auto& [key, ids] : per_class) {
    std::sort(ids.begin(), ids.end());  // independent of input order
    Rng rng(derive_seed(seed, static_cast<uint64_t>(key.first) * 16 + key.second));
    rng.shuffle(ids);
    const size_t n = ids.size();
    const size_t n_train = static_cast<size_t>(std::floor(n * r_train));
    const size_t n_val = static_cast<size_t>(std::floor(n * r_val));
    for (size_t i = 0; i < n; ++i) {
      if (i < n_train)
        out.train.push_back(ids[i]);
      else if (i < n_train + n_val)
        out.val.push_back(ids[i]);
      else
        out.test.push_back(ids[i]);
    }
  }
  return out;
}

LabelResult label_candidate(const Track& track, const SceneMeta& scene) {
  if (track.observations.empty()) throw ValidationError("empty track");
  validate_scene(scene);

  size_t entry_pos = track.observations.size();
  for (size_t i = 0; i < track.observations.size(); ++i) {
    if (box_intersects_polygon(track.observations[i].box, scene.safety_field)) {
      entry_pos = i;
      break;
    }
  }
  if (entry_pos == track.observations.size())
    throw ValidationError("no maneuver in safety field");

  LabelResult result;
  result.safety_entry_frame = track.observations[entry_pos].frame_idx;
  for (size_t i = entry_pos + 1; i < track.observations.size(); ++i) {
    const BoundingBox& b = track.observations[i].box;
    if (b.left() >= scene.ego_lane_x_min && b.right() <= scene.ego_lane_x_max) {
      result.label = ManeuverClass::cut_in();
      result.lane_entry_frame = track.observations[i].frame_idx;
      return result;
    }
  }
  result.label = ManeuverClass::lane_pass();
  return result;
}

}  // namespace cutin
