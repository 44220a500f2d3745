// csv.hpp — CSV output with round-trip number formatting
//
// Header row, comma separator, LF line endings, shortest decimal that reads
// back to the same double. Output bytes depend only on the values written.

#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace thermobath {

std::string format_number(double v);
std::string format_number(std::int64_t v);
inline std::string format_number(std::size_t v) { return format_number(static_cast<std::int64_t>(v)); }
inline std::string format_number(int v) { return format_number(static_cast<std::int64_t>(v)); }

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    template <class... T>
    void values(const T&... v) {
        row({format_number(v)...});
    }
    void close();

private:
    std::ofstream out_;
    std::size_t columns_;
    std::string path_;
};

} // namespace thermobath
