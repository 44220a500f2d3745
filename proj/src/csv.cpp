// csv.cpp — CSV output

#include "thermobath/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "thermobath/errors.hpp"

namespace thermobath {
namespace {
constexpr const char* kModule = "csv";
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_number(std::int64_t v) {
    std::array<char, 24> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()), path_(path) {
    if (!out_) throw Error(kModule, "cannot open '" + path + "' for writing");
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw Error(kModule, "row width does not match header in '" + path_ + "'");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw Error(kModule, "write failed for '" + path_ + "'");
}

void CsvWriter::close() {
    out_.close();
    if (!out_) throw Error(kModule, "closing '" + path_ + "' failed");
}

} // namespace thermobath
