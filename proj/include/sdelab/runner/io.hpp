#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace sdelab {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

/// Shortest round-trip decimal form; "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double v);

/// Comma-separated table with a header row, built in memory.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::initializer_list<double> values);
    void add_row(const std::vector<double>& values);
    std::string str() const;
    std::size_t rows() const { return rows_; }

private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

/// Parsed CSV with a header row; every cell kept as text.
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvData read_csv(const std::filesystem::path& path);

struct ManifestEntry {
    std::string file;
    std::string checksum;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    std::string experiment;
    std::string config_hash;
    std::string version;
    std::uint64_t seed = 0;
    std::string started_utc;
    std::string finished_utc;
    int status = 0;
    std::vector<ManifestEntry> outputs;

    std::string to_json() const;
};

/// ISO 8601 UTC time, second resolution.
std::string utc_timestamp();
/// Writes the bytes and returns their manifest entry.
ManifestEntry write_output(const std::filesystem::path& dir, const std::string& name, std::string_view content);

}  // namespace sdelab
