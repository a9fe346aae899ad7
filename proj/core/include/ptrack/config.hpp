// Copyright 2026 The ptrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PTRACK_CONFIG_HPP_
#define PTRACK_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>

namespace ptrack {

// Flat key/value configuration: one `section.key = value` per line, `#`
// starts a comment. Values are kept as text; the typed getters parse on
// access and throw on malformed values, while missing keys fall back.
class Config {
 public:
  Config() = default;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text,
                             const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);

  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  uint64_t get_uint64(const std::string& key, uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

  // FNV-1a over the sorted canonical `key=value` lines; stable id for
  // result provenance.
  uint64_t hash() const;

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace ptrack

#endif  // PTRACK_CONFIG_HPP_
