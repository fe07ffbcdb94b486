#include "lexnav/util.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace lexnav {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view s, std::string_view what) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw std::runtime_error("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

int64_t parse_int(std::string_view s, std::string_view what) {
  int64_t v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw std::runtime_error("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

uint64_t parse_uint(std::string_view s, std::string_view what) {
  uint64_t v{};
  auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size())
    throw std::runtime_error("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (i + 1 == s.size()) throw std::runtime_error("dangling backslash");
    ++i;
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      default: throw std::runtime_error(std::string("bad escape: \\") + s[i]);
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return content;
}

std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::string content = read_file(p);
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < content.size()) {
    size_t pos = content.find('\n', start);
    size_t end = (pos == std::string::npos) ? content.size() : pos;
    size_t len = end - start;
    if (len > 0 && content[start + len - 1] == '\r') --len;
    lines.emplace_back(content.substr(start, len));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return lines;
}

void atomic_write_file(const std::filesystem::path& p, std::string_view content) {
  auto parent = p.parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace lexnav
