#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "compmotion/preprocess.hpp"
#include "compmotion/types.hpp"

namespace helpers {

inline compmotion::FinalPose make_pose(double base = 0.0) {
    compmotion::FinalPose pose;
    for (std::size_t j = 0; j < compmotion::kJointCount; ++j)
        pose.locations[j] = {base + static_cast<double>(j), base + 1.0, base + 2.0};
    for (std::size_t a = 0; a < compmotion::kMovementAxisCount; ++a)
        pose.angles[a] = base + static_cast<double>(a);
    return pose;
}

inline compmotion::RelativePose random_relpose(std::mt19937_64& rng, double scale = 100.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    compmotion::RelativePose pose;
    for (auto& loc : pose.rel_locations) loc = {dist(rng), dist(rng), dist(rng)};
    for (auto& a : pose.norm_angles) a = dist(rng);
    return pose;
}

inline compmotion::FinalPose random_pose(std::mt19937_64& rng, double scale = 500.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    compmotion::FinalPose pose;
    for (auto& loc : pose.locations) loc = {dist(rng), dist(rng), dist(rng)};
    for (auto& a : pose.angles) a = dist(rng);
    return pose;
}

inline std::vector<compmotion::SubjectInfo> default_subjects() {
    std::vector<compmotion::SubjectInfo> subjects;
    for (int s = 1; s <= 7; ++s)
        subjects.push_back({s, 1650.0 + 30.0 * s, 560.0 + 12.0 * s});
    return subjects;
}

/// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("compmotion_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

  private:
    std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out << bytes;
}

}  // namespace helpers
