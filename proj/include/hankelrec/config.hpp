#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hankelrec/types.hpp"

namespace hankelrec {

// Plain-text experiment configuration: one "dotted.key = value" per line,
// '#' starts a comment, blank lines ignored. Values are free-form strings;
// list values are whitespace separated. Duplicate keys are an error.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;

  // Overrides a value (used by CLI flags which win over the file).
  void set(const std::string& key, const std::string& value);

  // Throws ConfigError naming the first key outside the allowed set; catches
  // typos early instead of silently ignoring them.
  void require_known(const std::set<std::string>& allowed) const;

  // Canonical "key = value" text, sorted by key; embedded into reports.
  std::string resolved_text() const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace hankelrec
