#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "grainstore/datagen.hpp"
#include "grainstore/retrieval.hpp"
#include "grainstore/table.hpp"

namespace testutil {

/// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path_ = base / ("grainstore-test-" + std::to_string(rd()) + "-" +
                        std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

std::string slurp(const std::filesystem::path& p);

/// Full verification pass over a grain index against its table: entries
/// sorted, every record's code owned by the right entry range.
void verify_grain_index(const grainstore::Table& t, const grainstore::GrainIndex& idx);

/// Full verification pass over an entity index: every non-null-keyed ordinal
/// appears exactly once, under its own key, ascending.
void verify_entity_index(const grainstore::Table& t, const grainstore::EntityIndex& idx);

} // namespace testutil
