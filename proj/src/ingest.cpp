#include "compmotion/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "compmotion/csv.hpp"

namespace fs = std::filesystem;

namespace compmotion {

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<std::string>& logical_reach_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c = {"subject", "condition", "orientation", "target",
                                      "t",       "reach_start", "reach_end"};
        for (JointId j : {JointId::Elbow, JointId::Shoulder, JointId::Trunk})
            for (AxisId d : {AxisId::X, AxisId::Y, AxisId::Z})
                c.push_back("loc_" + to_code(j) + "_" + to_code(d));
        for (const auto& ax : kMovementAxes)
            c.push_back("ang_" + to_code(ax.joint) + "_" + to_code(ax.axis));
        return c;
    }();
    return cols;
}

double parse_double(const std::string& field, const std::string& file, std::size_t line,
                    const std::string& column) {
    double value{};
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw MalformedRowError(file, line, "column '" + column + "': not a number: '" + field + "'");
    if (!std::isfinite(value))
        throw MalformedRowError(file, line, "column '" + column + "': non-finite value '" + field + "'");
    return value;
}

long parse_long(const std::string& field, const std::string& file, std::size_t line,
                const std::string& column) {
    long value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw MalformedRowError(file, line, "column '" + column + "': not an integer: '" + field + "'");
    return value;
}

}  // namespace

CsvSchemaConfig CsvSchemaConfig::canonical() {
    CsvSchemaConfig s;
    for (const auto& name : logical_reach_columns()) s.columns[name] = name;
    s.columns["height"] = "height";
    s.columns["arm_length"] = "arm_length";
    return s;
}

const std::string& CsvSchemaConfig::actual(const std::string& logical) const {
    const auto it = columns.find(logical);
    if (it == columns.end())
        throw MissingColumnError("schema does not map logical column '" + logical + "'");
    return it->second;
}

double CsvSchemaConfig::to_mm(double v, LengthUnit unit) const {
    switch (unit) {
        case LengthUnit::Mm: return v;
        case LengthUnit::Cm: return v * 10.0;
        default: return v * 1000.0;
    }
}

double CsvSchemaConfig::to_degrees(double v) const {
    return angle_unit == AngleUnit::Deg ? v : v * 180.0 / kPi;
}

CsvSchemaConfig CsvSchemaConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open schema file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("schema file " + path + ": " + e.what());
    }

    CsvSchemaConfig s = canonical();
    if (j.contains("columns")) {
        const std::set<std::string> known = [] {
            std::set<std::string> k;
            for (const auto& c : logical_reach_columns()) k.insert(c);
            k.insert("height");
            k.insert("arm_length");
            return k;
        }();
        for (const auto& [logical, actual] : j.at("columns").items()) {
            if (!known.count(logical))
                throw MissingColumnError("schema maps unknown logical column '" + logical + "'");
            s.columns[logical] = actual.get<std::string>();
        }
    }
    auto length_unit = [&](const std::string& key, LengthUnit fallback) {
        if (!j.contains(key)) return fallback;
        const std::string u = j.at(key).get<std::string>();
        if (u == "mm") return LengthUnit::Mm;
        if (u == "cm") return LengthUnit::Cm;
        if (u == "m") return LengthUnit::M;
        throw UnitUndeclaredError(key + ": unknown unit '" + u + "' (expected mm|cm|m)");
    };
    s.location_unit = length_unit("location_unit", LengthUnit::Mm);
    s.anthropometry_unit = length_unit("anthropometry_unit", LengthUnit::Mm);
    if (j.contains("angle_unit")) {
        const std::string u = j.at("angle_unit").get<std::string>();
        if (u == "deg") s.angle_unit = AngleUnit::Deg;
        else if (u == "rad") s.angle_unit = AngleUnit::Rad;
        else throw UnitUndeclaredError("angle_unit: unknown unit '" + u + "' (expected deg|rad)");
    }
    return s;
}

namespace {

std::vector<SubjectInfo> load_subjects(const std::string& path, const CsvSchemaConfig& schema) {
    const csv::Table table = csv::read_file(path);
    const int c_subject = table.column(schema.actual("subject"));
    const int c_height = table.column(schema.actual("height"));
    const int c_arm = table.column(schema.actual("arm_length"));
    if (c_subject < 0 || c_height < 0 || c_arm < 0)
        throw MissingColumnError(path + ": requires columns " + schema.actual("subject") + ", " +
                                 schema.actual("height") + ", " + schema.actual("arm_length"));
    std::vector<SubjectInfo> subjects;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        SubjectInfo s;
        s.subject_id = static_cast<int>(parse_long(row[static_cast<std::size_t>(c_subject)], path, line, "subject"));
        s.height_mm = schema.to_mm(parse_double(row[static_cast<std::size_t>(c_height)], path, line, "height"),
                                   schema.anthropometry_unit);
        s.arm_length_mm = schema.to_mm(
            parse_double(row[static_cast<std::size_t>(c_arm)], path, line, "arm_length"),
            schema.anthropometry_unit);
        subjects.push_back(s);
    }
    std::sort(subjects.begin(), subjects.end(),
              [](const SubjectInfo& a, const SubjectInfo& b) { return a.subject_id < b.subject_id; });
    return subjects;
}

NromTable load_nrom(const std::string& path) {
    const csv::Table table = csv::read_file(path);
    const int c_joint = table.column("joint");
    const int c_axis = table.column("axis");
    const int c_deg = table.column("degrees");
    if (c_joint < 0 || c_axis < 0 || c_deg < 0)
        throw NromIncompleteError(path + ": requires columns joint, axis, degrees");

    std::array<double, kMovementAxisCount> degrees{};
    std::array<bool, kMovementAxisCount> seen{};
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.line_numbers[i];
        const JointId joint = joint_from_code(row[static_cast<std::size_t>(c_joint)]);
        const AxisId axis = axis_from_code(row[static_cast<std::size_t>(c_axis)]);
        const int idx = movement_axis_index(joint, axis);
        if (idx < 0)
            throw MalformedRowError(path, line, "elbow has only the x movement axis");
        degrees[static_cast<std::size_t>(idx)] =
            parse_double(row[static_cast<std::size_t>(c_deg)], path, line, "degrees");
        seen[static_cast<std::size_t>(idx)] = true;
    }
    for (std::size_t a = 0; a < kMovementAxisCount; ++a)
        if (!seen[a])
            throw NromIncompleteError(path + ": missing NROM for " + to_code(kMovementAxes[a].joint) +
                                      "." + to_code(kMovementAxes[a].axis));
    return NromTable::from_degrees(degrees);
}

struct RecordKey {
    int subject;
    int condition;
    int orientation;
    int target;
    auto operator<=>(const RecordKey&) const = default;
};

void parse_reach_file(const std::string& path, const CsvSchemaConfig& schema,
                      std::map<RecordKey, std::map<long, FinalPose>>& samples,
                      std::map<RecordKey, std::pair<long, long>>& intervals) {
    const csv::Table table = csv::read_file(path);

    std::array<int, 23> col{};
    const auto& logical = logical_reach_columns();
    for (std::size_t i = 0; i < logical.size(); ++i) {
        col[i] = table.column(schema.actual(logical[i]));
        if (col[i] < 0)
            throw MissingColumnError(path + ": missing column '" + schema.actual(logical[i]) +
                                     "' (logical '" + logical[i] + "')");
    }
    auto field = [&](const std::vector<std::string>& row, std::size_t logical_idx) -> const std::string& {
        return row[static_cast<std::size_t>(col[logical_idx])];
    };

    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::size_t line = table.line_numbers[i];

        RecordKey key{};
        key.subject = static_cast<int>(parse_long(field(row, 0), path, line, logical[0]));
        try {
            key.condition = static_cast<int>(condition_from_code(field(row, 1)));
            key.orientation = static_cast<int>(orientation_from_code(field(row, 2)));
        } catch (const Error& e) {
            throw MalformedRowError(path, line, e.what());
        }
        key.target = static_cast<int>(parse_long(field(row, 3), path, line, logical[3]));
        if (key.target < 1 || key.target > static_cast<int>(kTargetCount))
            throw MalformedRowError(path, line, "target out of range 1..49: " + std::to_string(key.target));

        const long t = parse_long(field(row, 4), path, line, logical[4]);
        const long start = parse_long(field(row, 5), path, line, logical[5]);
        const long end = parse_long(field(row, 6), path, line, logical[6]);
        if (start < 0 || end < start)
            throw MalformedRowError(path, line, "invalid reach interval [" + std::to_string(start) +
                                                    ", " + std::to_string(end) + "]");

        FinalPose pose;
        std::size_t f = 7;
        for (std::size_t j = 0; j < kJointCount; ++j)
            for (int d = 0; d < 3; ++d, ++f)
                pose.locations[j][static_cast<std::size_t>(d)] =
                    schema.to_mm(parse_double(field(row, f), path, line, logical[f]), schema.location_unit);
        for (std::size_t a = 0; a < kMovementAxisCount; ++a, ++f)
            pose.angles[a] = schema.to_degrees(parse_double(field(row, f), path, line, logical[f]));

        auto [it, inserted] = samples[key].emplace(t, pose);
        if (!inserted)
            throw MalformedRowError(path, line, "duplicate sample t=" + std::to_string(t) +
                                                    " for subject " + std::to_string(key.subject) +
                                                    " target " + std::to_string(key.target));
        auto [iit, first] = intervals.emplace(key, std::pair{start, end});
        if (!first && iit->second != std::pair{start, end})
            throw MalformedRowError(path, line, "reach interval changes within one record");
    }
}

}  // namespace

Dataset load_dataset(const std::string& path, const CsvSchemaConfig& schema,
                     const std::string& nrom_path) {
    std::vector<std::string> reach_files;
    fs::path subjects_path;

    if (fs::is_directory(path)) {
        for (const auto& entry : fs::directory_iterator(path)) {
            if (!entry.is_regular_file()) continue;
            const std::string name = entry.path().filename().string();
            if (name.starts_with("reaches") && name.ends_with(".csv"))
                reach_files.push_back(entry.path().string());
        }
        std::sort(reach_files.begin(), reach_files.end());
        if (reach_files.empty()) throw Error("no reaches*.csv files found in " + path);
        subjects_path = fs::path(path) / "subjects.csv";
    } else if (fs::is_regular_file(path)) {
        reach_files.push_back(path);
        subjects_path = fs::path(path).parent_path() / "subjects.csv";
    } else {
        throw Error("dataset path does not exist: " + path);
    }

    Dataset dataset;
    dataset.subjects = load_subjects(subjects_path.string(), schema);
    dataset.nrom = load_nrom(nrom_path);

    std::map<RecordKey, std::map<long, FinalPose>> samples;
    std::map<RecordKey, std::pair<long, long>> intervals;
    for (const auto& file : reach_files) parse_reach_file(file, schema, samples, intervals);

    // std::map iteration gives the canonical (subject, condition,
    // orientation, target) ordering.
    for (const auto& [key, frames] : samples) {
        ReachRecord rec;
        rec.subject_id = key.subject;
        rec.condition = static_cast<Condition>(key.condition);
        rec.orientation = static_cast<Orientation>(key.orientation);
        rec.target = TargetId(key.target);
        long expected_t = 0;
        for (const auto& [t, pose] : frames) {
            if (t != expected_t)
                throw MalformedRowError("dataset", 0,
                                        "non-contiguous sample times for subject " +
                                            std::to_string(key.subject) + " target " +
                                            std::to_string(key.target) + ": expected t=" +
                                            std::to_string(expected_t) + ", got t=" + std::to_string(t));
            ++expected_t;
            rec.samples.push_back(pose);
        }
        const auto [start, end] = intervals.at(key);
        if (end >= static_cast<long>(rec.samples.size()))
            throw MalformedRowError("dataset", 0,
                                    "reach interval end " + std::to_string(end) +
                                        " out of range for " + std::to_string(rec.samples.size()) +
                                        " sample(s) (subject " + std::to_string(key.subject) +
                                        " target " + std::to_string(key.target) + ")");
        rec.reach_start = static_cast<std::size_t>(start);
        rec.reach_end = static_cast<std::size_t>(end);
        dataset.records.push_back(std::move(rec));
    }
    return dataset;
}

FinalPose extract_final_pose(const ReachRecord& record) {
    if (record.samples.empty() || record.reach_start > record.reach_end ||
        record.reach_end >= record.samples.size())
        throw EmptyIntervalError("reach interval [" + std::to_string(record.reach_start) + ", " +
                                 std::to_string(record.reach_end) + "] invalid for " +
                                 std::to_string(record.samples.size()) + " sample(s)");
    return record.samples[record.reach_end];
}

FinalPose extract_initial_pose(const ReachRecord& record) {
    if (record.samples.empty() || record.reach_start > record.reach_end ||
        record.reach_end >= record.samples.size())
        throw EmptyIntervalError("reach interval [" + std::to_string(record.reach_start) + ", " +
                                 std::to_string(record.reach_end) + "] invalid for " +
                                 std::to_string(record.samples.size()) + " sample(s)");
    return record.samples[record.reach_start];
}

}  // namespace compmotion
