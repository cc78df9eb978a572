#pragma once

#include <string>
#include <vector>

namespace qcurl {

std::string fmt_double(double v);  // %.17g, '.' decimal point
std::string fmt_int(long long v);

// Validates every row width against the header before anything is written.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Minimal reader for our own output (no quoted fields); returns rows incl. header.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace qcurl
