#pragma once

#include <nlohmann/json.hpp>

#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bdsg {

/// Binary container shared by the band-table and reference caches:
/// one JSON header line, then the raw little-endian arrays in the order
/// listed under header["arrays"] (f64, or c128 as interleaved re/im).
struct ArrayFile {
    nlohmann::json header;
    std::map<std::string, std::vector<double>> real_arrays;
    std::map<std::string, std::vector<std::complex<double>>> complex_arrays;

    void add_real(const std::string& name, std::vector<double> data);
    void add_complex(const std::string& name, std::vector<std::complex<double>> data);

    void save(const std::filesystem::path& path) const;
    static ArrayFile load(const std::filesystem::path& path);
};

/// Floating-point text format used in every CSV/JSON output: 17 significant
/// digits, so values re-parse exactly.
std::string format_g17(double value);

/// FNV-1a 64-bit hash (stable across platforms), hex-encoded.
std::string fnv1a_hex(std::string_view data);

/// Minimal CSV writer: fixed header, fixed column order, g17 numbers.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    ~CsvWriter();

    void row(const std::vector<std::string>& cells);
    void row_numeric(const std::vector<double>& cells);

private:
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace bdsg
