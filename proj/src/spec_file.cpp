#include "sbmtest/spec_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sbmtest/error.hpp"

namespace sbmtest {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::Parse, "spec line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Strips a trailing comment outside of quotes.
std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string parse_scalar(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s.empty()) fail(line, "empty value");
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') fail(line, "unterminated string");
    const std::string_view inner = s.substr(1, s.size() - 2);
    if (inner.find('"') != std::string_view::npos) fail(line, "stray quote in string");
    return std::string(inner);
  }
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '[' || c == ']' ||
        c == ',' || c == '=') {
      fail(line, "malformed value '" + std::string(s) + "'");
    }
  }
  return std::string(s);
}

bool valid_key(std::string_view k) {
  if (k.empty() || !(std::isalpha(static_cast<unsigned char>(k[0])) || k[0] == '_')) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

double to_double(const std::string& s, const std::string& key) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::Parse, "spec key '" + key + "': '" + s + "' is not a number");
  }
  return v;
}

std::size_t to_size(const std::string& s, const std::string& key) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorCode::Parse,
                "spec key '" + key + "': '" + s + "' is not a nonnegative integer");
  }
  return v;
}

}  // namespace

SpecFile SpecFile::parse(std::string_view text) {
  SpecFile out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    if (!valid_key(key)) fail(line_no, "invalid key '" + key + "'");
    if (out.entries_.count(key)) fail(line_no, "duplicate key '" + key + "'");
    std::string_view value = trim(line.substr(eq + 1));
    Entry e;
    e.line = line_no;
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') fail(line_no, "array must close on the same line");
      e.is_array = true;
      std::string_view body = trim(value.substr(1, value.size() - 2));
      while (!body.empty()) {
        const std::size_t comma = body.find(',');
        e.items.push_back(parse_scalar(body.substr(0, comma), line_no));
        if (comma == std::string_view::npos) break;
        body = trim(body.substr(comma + 1));
      }
    } else {
      e.items.push_back(parse_scalar(value, line_no));
    }
    out.entries_.emplace(key, std::move(e));
  }
  return out;
}

SpecFile SpecFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::vector<std::string> SpecFile::keys() const {
  std::vector<std::string> k;
  for (const auto& [key, _] : entries_) k.push_back(key);
  return k;
}

const SpecFile::Entry* SpecFile::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<std::string> SpecFile::get_string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  if (e->is_array) throw Error(ErrorCode::Parse, "spec key '" + key + "' must be a scalar");
  return e->items.front();
}

std::optional<double> SpecFile::get_double(const std::string& key) const {
  auto s = get_string(key);
  if (!s) return std::nullopt;
  return to_double(*s, key);
}

std::optional<std::size_t> SpecFile::get_size(const std::string& key) const {
  auto s = get_string(key);
  if (!s) return std::nullopt;
  return to_size(*s, key);
}

std::optional<bool> SpecFile::get_bool(const std::string& key) const {
  auto s = get_string(key);
  if (!s) return std::nullopt;
  if (*s == "true") return true;
  if (*s == "false") return false;
  throw Error(ErrorCode::Parse, "spec key '" + key + "' must be true or false");
}

std::optional<std::vector<std::string>> SpecFile::get_strings(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  return e->items;
}

std::optional<std::vector<double>> SpecFile::get_doubles(const std::string& key) const {
  auto items = get_strings(key);
  if (!items) return std::nullopt;
  std::vector<double> out;
  for (const auto& s : *items) out.push_back(to_double(s, key));
  return out;
}

std::optional<std::vector<std::size_t>> SpecFile::get_sizes(const std::string& key) const {
  auto items = get_strings(key);
  if (!items) return std::nullopt;
  std::vector<std::size_t> out;
  for (const auto& s : *items) out.push_back(to_size(s, key));
  return out;
}

}  // namespace sbmtest
