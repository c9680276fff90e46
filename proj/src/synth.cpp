#include "compmotion/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>

#include "compmotion/csv.hpp"
#include "compmotion/heatmap.hpp"

namespace compmotion {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegPerRad = 180.0 / kPi;

/// splitmix64: fully specified so generated files are stable across
/// platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        // Box-Muller on explicitly generated uniforms.
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

  private:
    std::uint64_t state_;
};

std::uint64_t fold(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
}

struct SubjectGeometry {
    SubjectInfo info;
    Vec3 shoulder_rest;
    Vec3 trunk_rest;
    double upper_arm;
    double forearm;
    double torso_len;
};

SubjectGeometry subject_geometry(const SynthParams& p, int subject_id) {
    Rng rng(fold(fold(p.seed, 0xA17Cu), static_cast<std::uint64_t>(subject_id)));
    SubjectGeometry g;
    g.info.subject_id = subject_id;
    g.info.height_mm = rng.uniform(p.height_min_mm, p.height_max_mm);
    g.info.arm_length_mm = rng.uniform(p.arm_min_mm, p.arm_max_mm);
    const double h = g.info.height_mm;
    g.shoulder_rest = {0.11 * h, 0.818 * h, 0.0};  // right shoulder
    g.trunk_rest = {0.0, 0.72 * h, 0.0};
    g.upper_arm = 0.53 * g.info.arm_length_mm;
    g.forearm = 0.47 * g.info.arm_length_mm;
    g.torso_len = 0.30 * h;
    return g;
}

/// Grid cell centre in the subject frame (x right, y up, z forward).
Vec3 target_position(const SynthParams& p, const SubjectGeometry& g, Orientation o, int row, int col) {
    const double s = p.grid_spacing_mm;
    const double x = (col - 4) * s;
    if (o == Orientation::Vertical) {
        const double y_center = 0.75 * g.info.height_mm;
        const double z_plane = 0.55 * g.info.arm_length_mm;
        return {x, y_center + (4 - row) * s, z_plane};
    }
    const double y_plane = 0.45 * g.info.height_mm;
    const double z_near = 0.30 * g.info.arm_length_mm;
    return {x, y_plane, z_near + (7 - row) * s};
}

double clamp_angle(double deg, double nrom) { return std::clamp(deg, -0.95 * nrom, 0.95 * nrom); }

struct Reach {
    Vec3 elbow, shoulder, trunk;
    std::array<double, kMovementAxisCount> angles;
};

Reach solve_reach(const SynthParams& p, const SubjectGeometry& g, const NromTable& nrom,
                  const Vec3& target) {
    const Vec3 u = target - g.shoulder_rest;
    const double dist0 = norm(u);
    const double reach_max = 0.97 * (g.upper_arm + g.forearm);
    const double d_min = 0.28 * g.info.arm_length_mm;
    const double d = std::clamp(dist0, d_min, reach_max);
    const double lean = dist0 - d;
    if (std::abs(lean) > p.max_trunk_travel_mm)
        throw UnreachableTargetError("target at distance " + std::to_string(dist0) +
                                     "mm needs trunk travel " + std::to_string(lean) +
                                     "mm > budget " + std::to_string(p.max_trunk_travel_mm) + "mm");

    const Vec3 travel = dist0 > 0.0 ? (lean / dist0) * u : Vec3{0.0, 0.0, 0.0};
    const Vec3 shoulder = g.shoulder_rest + travel;
    const Vec3 trunk = g.trunk_rest + travel;

    // Planar two-link solution in the plane spanned by the reach direction
    // and gravity, elbow-down.
    const Vec3 w = (target - shoulder) / d;
    const double cos_elbow =
        std::clamp((g.upper_arm * g.upper_arm + g.forearm * g.forearm - d * d) /
                       (2.0 * g.upper_arm * g.forearm),
                   -1.0, 1.0);
    const double elbow_interior = std::acos(cos_elbow);
    const double cos_alpha = std::clamp(
        (g.upper_arm * g.upper_arm + d * d - g.forearm * g.forearm) / (2.0 * g.upper_arm * d), -1.0,
        1.0);
    const double alpha = std::acos(cos_alpha);

    Vec3 down{0.0, -1.0, 0.0};
    Vec3 in_plane = down - dot(down, w) * w;
    if (norm(in_plane) < 1e-9) {
        down = {0.0, 0.0, -1.0};
        in_plane = down - dot(down, w) * w;
    }
    in_plane = in_plane / norm(in_plane);
    const Vec3 elbow = shoulder + g.upper_arm * (std::cos(alpha) * w + std::sin(alpha) * in_plane);

    const Vec3 arm_dir = (elbow - shoulder) / g.upper_arm;

    Reach r;
    r.elbow = elbow;
    r.shoulder = shoulder;
    r.trunk = trunk;

    const double flexion = 180.0 - elbow_interior * kDegPerRad;
    const double elevation = std::acos(std::clamp(-arm_dir[1], -1.0, 1.0)) * kDegPerRad;
    const double plane_of_elevation = std::atan2(arm_dir[0], arm_dir[2]) * kDegPerRad;
    const double internal_rotation = 0.35 * plane_of_elevation + 0.10 * elevation;
    const double trunk_flexion = 0.9 * std::atan2(travel[2], g.torso_len) * kDegPerRad;
    const double trunk_rotation = 0.5 * std::atan2(travel[0], g.torso_len) * kDegPerRad;
    const double trunk_lateral = 0.4 * std::atan2(travel[0], g.torso_len) * kDegPerRad;

    r.angles = {
        clamp_angle(flexion, nrom.degrees(0)),           clamp_angle(plane_of_elevation, nrom.degrees(1)),
        clamp_angle(elevation, nrom.degrees(2)),         clamp_angle(internal_rotation, nrom.degrees(3)),
        clamp_angle(trunk_flexion, nrom.degrees(4)),     clamp_angle(trunk_rotation, nrom.degrees(5)),
        clamp_angle(trunk_lateral, nrom.degrees(6)),
    };
    return r;
}

FinalPose rest_pose(const SubjectGeometry& g) {
    FinalPose pose;
    pose.location(JointId::Elbow) = g.shoulder_rest - Vec3{0.0, g.upper_arm, 0.0};
    pose.location(JointId::Shoulder) = g.shoulder_rest;
    pose.location(JointId::Trunk) = g.trunk_rest;
    pose.angles = {5.0, 2.0, 3.0, 1.0, 0.5, 0.3, 0.2};
    return pose;
}

/// Deterministic distortion field: direction and per-axis angle offsets are
/// smooth functions of the target index so the braced condition deviates in
/// a spatially coherent way.
Vec3 location_offset(JointId joint, int n) {
    const double j = static_cast<double>(joint);
    const double magnitude = joint == JointId::Elbow ? 60.0 : (joint == JointId::Shoulder ? 40.0 : 25.0);
    Vec3 dir{std::sin(0.9 * n + 1.3 * j), std::cos(0.7 * n + 0.4 * j), std::sin(0.5 * n + 2.1 * j)};
    return (magnitude / norm(dir)) * dir;
}

double angle_offset(std::size_t axis, int n) {
    static constexpr std::array<double, kMovementAxisCount> magnitudes{8.0, 4.0, 5.0, 6.0, 3.0, 2.0, 2.0};
    return magnitudes[axis] * (0.6 + 0.4 * std::sin(0.8 * n + static_cast<double>(axis)));
}

void validate_params(const SynthParams& p) {
    if (p.n_subjects < 1) throw ConfigError("synth: n_subjects must be >= 1");
    if (!(p.height_min_mm > 0.0) || p.height_max_mm < p.height_min_mm)
        throw ConfigError("synth: invalid height range");
    if (!(p.arm_min_mm > 0.0) || p.arm_max_mm < p.arm_min_mm)
        throw ConfigError("synth: invalid arm length range");
    if (p.height_min_mm <= p.arm_max_mm)
        throw ConfigError("synth: heights must exceed arm lengths");
    if (!(p.grid_spacing_mm > 0.0)) throw ConfigError("synth: grid spacing must be positive");
    if (p.compensation_gain < 0.0 || p.strategy_noise_mm < 0.0 || p.background_gain < 0.0)
        throw ConfigError("synth: gains and noise must be non-negative");
    if (p.region_row_min < 1 || p.region_row_max > static_cast<int>(kGridRows) ||
        p.region_row_min > p.region_row_max || p.region_col_min < 1 ||
        p.region_col_max > static_cast<int>(kGridCols) || p.region_col_min > p.region_col_max)
        throw ConfigError("synth: invalid distorted region bounds");
}

}  // namespace

Dataset generate_dataset(const SynthParams& params) {
    validate_params(params);

    Dataset dataset;
    dataset.nrom = NromTable{};
    const GridSpec grid;

    for (int s = 1; s <= params.n_subjects; ++s) {
        const SubjectGeometry geo = subject_geometry(params, s);
        dataset.subjects.push_back(geo.info);
        const FinalPose rest = rest_pose(geo);

        // Records in canonical (subject, condition, orientation, target)
        // order. The per-(subject, orientation, target) noise stream is
        // replayed for both conditions, so the strategy perturbation is
        // shared and only the braced distortion separates them.
        for (Condition c : {Condition::Unbraced, Condition::Braced}) {
            for (Orientation o : {Orientation::Horizontal, Orientation::Vertical}) {
                for (int n = 1; n <= static_cast<int>(kTargetCount); ++n) {
                    const Cell cell = target_to_cell(TargetId(n), grid);
                    const Vec3 target = target_position(params, geo, o, cell.row, cell.col);
                    Reach reach = solve_reach(params, geo, dataset.nrom, target);

                    Rng noise(
                        fold(fold(fold(fold(params.seed, 0x57A7u), static_cast<std::uint64_t>(s)),
                                  static_cast<std::uint64_t>(o)),
                             static_cast<std::uint64_t>(n)));
                    const double sigma = params.strategy_noise_mm;
                    for (Vec3* loc : {&reach.elbow, &reach.shoulder, &reach.trunk})
                        for (auto& comp : *loc) comp += sigma * noise.gaussian();
                    for (auto& a : reach.angles) a += 0.1 * sigma * noise.gaussian();
                    // Per-subject distortion factors, drawn for both
                    // conditions to keep the stream aligned.
                    std::array<double, kJointCount> distortion_scale;
                    for (auto& d : distortion_scale) d = 1.0 + 0.15 * noise.gaussian();

                    FinalPose pose;
                    pose.location(JointId::Elbow) = reach.elbow;
                    pose.location(JointId::Shoulder) = reach.shoulder;
                    pose.location(JointId::Trunk) = reach.trunk;
                    pose.angles = reach.angles;

                    if (c == Condition::Braced) {
                        const double region_w = params.in_distorted_region(cell.row, cell.col)
                                                    ? 1.0
                                                    : params.background_gain;
                        const double gain = params.compensation_gain * region_w;
                        for (std::size_t j = 0; j < kJointCount; ++j) {
                            const Vec3 off = location_offset(static_cast<JointId>(j), n);
                            pose.locations[j] = pose.locations[j] + gain * distortion_scale[j] * off;
                        }
                        for (std::size_t a = 0; a < kMovementAxisCount; ++a) {
                            const std::size_t j = static_cast<std::size_t>(kMovementAxes[a].joint);
                            pose.angles[a] += gain * distortion_scale[j] * angle_offset(a, n);
                        }
                    }

                    ReachRecord rec;
                    rec.subject_id = s;
                    rec.condition = c;
                    rec.orientation = o;
                    rec.target = TargetId(n);
                    rec.samples = {rest, pose};
                    rec.reach_start = 0;
                    rec.reach_end = 1;
                    dataset.records.push_back(std::move(rec));
                }
            }
        }
    }
    return dataset;
}

namespace {

const std::array<std::string, 23> kCanonicalColumns = {
    "subject", "condition", "orientation", "target",  "t",       "reach_start", "reach_end",
    "loc_e_x", "loc_e_y",   "loc_e_z",     "loc_s_x", "loc_s_y", "loc_s_z",     "loc_t_x",
    "loc_t_y", "loc_t_z",   "ang_e_x",     "ang_s_x", "ang_s_y", "ang_s_z",     "ang_t_x",
    "ang_t_y", "ang_t_z"};

std::string full_precision(double v) { return csv::format_double(v, 17); }

}  // namespace

void write_dataset_csv(const Dataset& dataset, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    {
        std::ofstream subjects(fs::path(out_dir) / "subjects.csv", std::ios::binary);
        subjects << "subject,height,arm_length\n";
        for (const auto& s : dataset.subjects)
            subjects << csv::format_row({std::to_string(s.subject_id), full_precision(s.height_mm),
                                         full_precision(s.arm_length_mm)});
    }
    {
        std::ofstream nrom(fs::path(out_dir) / "nrom.csv", std::ios::binary);
        nrom << "joint,axis,degrees\n";
        for (std::size_t a = 0; a < kMovementAxisCount; ++a)
            nrom << csv::format_row({to_code(kMovementAxes[a].joint), to_code(kMovementAxes[a].axis),
                                     full_precision(dataset.nrom.degrees(a))});
    }

    // One long-format file per subject x condition x orientation, rows
    // ordered by (target, t).
    std::map<std::tuple<int, int, int>, std::vector<const ReachRecord*>> blocks;
    for (const auto& r : dataset.records)
        blocks[{r.subject_id, static_cast<int>(r.condition), static_cast<int>(r.orientation)}]
            .push_back(&r);

    for (auto& [key, records] : blocks) {
        const auto [subject, condition, orientation] = key;
        std::sort(records.begin(), records.end(),
                  [](const ReachRecord* a, const ReachRecord* b) { return a->target < b->target; });
        const std::string name = "reaches_s" + std::to_string(subject) + "_" +
                                 to_code(static_cast<Condition>(condition)) + "_" +
                                 to_code(static_cast<Orientation>(orientation)) + ".csv";
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        for (std::size_t i = 0; i < kCanonicalColumns.size(); ++i)
            out << (i ? "," : "") << kCanonicalColumns[i];
        out << "\n";
        for (const ReachRecord* rec : records) {
            for (std::size_t t = 0; t < rec->samples.size(); ++t) {
                const FinalPose& pose = rec->samples[t];
                std::vector<std::string> fields = {
                    std::to_string(rec->subject_id),
                    to_code(rec->condition),
                    to_code(rec->orientation),
                    std::to_string(rec->target.index),
                    std::to_string(t),
                    std::to_string(rec->reach_start),
                    std::to_string(rec->reach_end),
                };
                for (std::size_t j = 0; j < kJointCount; ++j)
                    for (int d = 0; d < 3; ++d)
                        fields.push_back(full_precision(pose.locations[j][static_cast<std::size_t>(d)]));
                for (std::size_t a = 0; a < kMovementAxisCount; ++a)
                    fields.push_back(full_precision(pose.angles[a]));
                out << csv::format_row(fields);
            }
        }
    }
}

}  // namespace compmotion
