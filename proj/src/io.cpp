#include "bdsg/io.hpp"

#include "bdsg/errors.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "cache file layout assumes a little-endian host");

namespace bdsg {

void ArrayFile::add_real(const std::string& name, std::vector<double> data) {
    header["arrays"].push_back({{"name", name}, {"type", "f64"}, {"count", data.size()}});
    real_arrays[name] = std::move(data);
}

void ArrayFile::add_complex(const std::string& name, std::vector<std::complex<double>> data) {
    header["arrays"].push_back({{"name", name}, {"type", "c128"}, {"count", data.size()}});
    complex_arrays[name] = std::move(data);
}

void ArrayFile::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    const std::string head = header.dump();
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    out.put('\n');
    for (const auto& entry : header.at("arrays")) {
        const std::string name = entry.at("name");
        const std::string type = entry.at("type");
        if (type == "f64") {
            const auto& data = real_arrays.at(name);
            out.write(reinterpret_cast<const char*>(data.data()),
                      static_cast<std::streamsize>(data.size() * sizeof(double)));
        } else if (type == "c128") {
            const auto& data = complex_arrays.at(name);
            out.write(reinterpret_cast<const char*>(data.data()),
                      static_cast<std::streamsize>(data.size() * sizeof(std::complex<double>)));
        } else {
            throw IoError("unknown array type " + type);
        }
    }
    if (!out) throw IoError("short write to " + path.string());
}

ArrayFile ArrayFile::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string head;
    if (!std::getline(in, head)) throw IoError("missing header line in " + path.string());

    ArrayFile file;
    file.header = nlohmann::json::parse(head, nullptr, /*allow_exceptions=*/false);
    if (file.header.is_discarded()) throw IoError("corrupt header in " + path.string());

    for (const auto& entry : file.header.at("arrays")) {
        const std::string name = entry.at("name");
        const std::string type = entry.at("type");
        const std::size_t count = entry.at("count");
        if (type == "f64") {
            std::vector<double> data(count);
            in.read(reinterpret_cast<char*>(data.data()),
                    static_cast<std::streamsize>(count * sizeof(double)));
            file.real_arrays[name] = std::move(data);
        } else if (type == "c128") {
            std::vector<std::complex<double>> data(count);
            in.read(reinterpret_cast<char*>(data.data()),
                    static_cast<std::streamsize>(count * sizeof(std::complex<double>)));
            file.complex_arrays[name] = std::move(data);
        } else {
            throw IoError("unknown array type " + type + " in " + path.string());
        }
        if (!in) throw IoError("truncated array data in " + path.string());
    }
    return file;
}

std::string format_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::trunc), columns_(columns.size()) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw IoError("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void CsvWriter::row_numeric(const std::vector<double>& cells) {
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (double v : cells) text.push_back(format_g17(v));
    row(text);
}

CsvWriter::~CsvWriter() = default;

} // namespace bdsg
