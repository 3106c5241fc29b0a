#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pidkit/pidkit.hpp"

namespace testing_support {

inline std::string fixture(const std::string& name) { return std::string(PIDKIT_FIXTURE_DIR) + "/" + name; }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("pidkit_" + tag + "_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::string file(const std::string& name, const std::string& content) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << content;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline pidkit::BinnedIncomeTable make_table(const std::vector<std::pair<int, int>>& ranges,
                                            const std::vector<double>& means, int year = 2000) {
    pidkit::BinnedIncomeTable t{"TST", year, "XXX", {}};
    for (std::size_t i = 0; i < ranges.size(); ++i)
        t.bins.push_back({{ranges[i].first, ranges[i].second}, 1000.0, means[i], false});
    return t;
}

}  // namespace testing_support
