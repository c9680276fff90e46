#pragma once

#include <map>
#include <string>

#include "compmotion/types.hpp"

namespace compmotion {

/// Maps the canonical logical columns onto a concrete CSV layout and
/// declares the units of each column group. The canonical schema uses the
/// logical names directly with mm / degrees.
struct CsvSchemaConfig {
    enum class LengthUnit : std::uint8_t { Mm, Cm, M };
    enum class AngleUnit : std::uint8_t { Deg, Rad };

    /// logical name -> actual column name in the files. Logical names:
    /// subject, condition, orientation, target, t, reach_start, reach_end,
    /// loc_<j>_<axis> (9 of them), ang_<j>_<axis> (7), height, arm_length.
    std::map<std::string, std::string> columns;
    LengthUnit location_unit = LengthUnit::Mm;
    LengthUnit anthropometry_unit = LengthUnit::Mm;
    AngleUnit angle_unit = AngleUnit::Deg;

    static CsvSchemaConfig canonical();
    /// Reads a JSON adapter: {"columns": {...}, "location_unit": "mm",
    /// "anthropometry_unit": "mm", "angle_unit": "deg"}. Unknown unit
    /// strings raise UnitUndeclaredError; unknown logical column names
    /// raise MissingColumnError.
    static CsvSchemaConfig from_json_file(const std::string& path);

    const std::string& actual(const std::string& logical) const;
    double to_mm(double v, LengthUnit unit) const;
    double to_degrees(double v) const;
};

/// Loads a dataset from `path` (a directory containing subjects.csv plus
/// reaches_*.csv files, or a single reaches CSV whose directory supplies
/// subjects.csv) and an NROM table from `nrom_path` (joint, axis, degrees).
/// All values are unit-normalized to mm / degrees and records are ordered
/// by (subject, condition, orientation, target).
Dataset load_dataset(const std::string& path, const CsvSchemaConfig& schema,
                     const std::string& nrom_path);

/// Frame at the end of the reach interval. Throws EmptyIntervalError when
/// the interval does not address a sample.
FinalPose extract_final_pose(const ReachRecord& record);

/// Frame at the start of the reach interval.
FinalPose extract_initial_pose(const ReachRecord& record);

}  // namespace compmotion
