#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sbmtest {

// Flat key/value file, a small subset of TOML:
//
//   # comment
//   key = scalar
//   key = [scalar, scalar, ...]     (one line)
//
// Scalars are numbers, true/false, bare words or "double-quoted strings".
// Keys are unique. Anything after an unquoted '#' is ignored.
class SpecFile {
 public:
  static SpecFile parse(std::string_view text);
  static SpecFile load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  std::vector<std::string> keys() const;

  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::size_t> get_size(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::vector<std::string>> get_strings(const std::string& key) const;
  std::optional<std::vector<double>> get_doubles(const std::string& key) const;
  std::optional<std::vector<std::size_t>> get_sizes(const std::string& key) const;

 private:
  struct Entry {
    bool is_array = false;
    std::vector<std::string> items;
    std::size_t line = 0;
  };
  const Entry* find(const std::string& key) const;

  std::map<std::string, Entry> entries_;
};

}  // namespace sbmtest
