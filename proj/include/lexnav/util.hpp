#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lexnav {

// Splits on a single separator; empty fields are kept.
std::vector<std::string_view> split(std::string_view s, char sep);

// Shortest decimal form that parses back to the same double.
// Infinities print as "inf" / "-inf".
std::string format_double(double x);

// Strict parsers: the whole token must be consumed. `what` names the value
// in the error message.
double parse_double(std::string_view s, std::string_view what = "number");
int64_t parse_int(std::string_view s, std::string_view what = "integer");
uint64_t parse_uint(std::string_view s, std::string_view what = "integer");

// Escapes for the tab-separated corpus files: tab -> \t, newline -> \n,
// backslash -> \\.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

std::string read_file(const std::filesystem::path& p);
// Splits file content into lines; handles \r\n and a trailing newline.
std::vector<std::string> read_lines(const std::filesystem::path& p);
// Writes to a temp file in the same directory, then renames over the target.
void atomic_write_file(const std::filesystem::path& p, std::string_view content);

}  // namespace lexnav
