// Copyright 2026 The randlchs Authors.
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

#include "randlchs/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "randlchs/types.hpp"

namespace randlchs {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& line) {
  const auto pos = line.find_first_of("#;");
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw ContractError(origin + ":" + std::to_string(lineno) + ": unterminated section");
      }
      section = trim(body.substr(1, body.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ContractError(origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) {
      throw ContractError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    cfg.sections_[section][key] = value;
  }
  if (cfg.get_long("", "schema", -1) != 1) {
    throw ContractError(origin + ": config must declare schema = 1 before any section");
  }
  return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto sit = sections_.find(section);
  return sit != sections_.end() && sit->second.count(key) > 0;
}

const std::string& ConfigFile::raw(const std::string& section, const std::string& key) const {
  const auto sit = sections_.find(section);
  if (sit == sections_.end() || sit->second.count(key) == 0) {
    throw ContractError(origin_ + ": missing key [" + section + "] " + key);
  }
  return sit->second.at(key);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
  return raw(section, key);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
  return has(section, key) ? raw(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
  const std::string& v = raw(section, key);
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0') {
    throw ContractError(origin_ + ": [" + section + "] " + key + " is not a number: " + v);
  }
  return out;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

long ConfigFile::get_long(const std::string& section, const std::string& key) const {
  const std::string& v = raw(section, key);
  char* end = nullptr;
  const long out = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0') {
    throw ContractError(origin_ + ": [" + section + "] " + key + " is not an integer: " + v);
  }
  return out;
}

long ConfigFile::get_long(const std::string& section, const std::string& key,
                          long fallback) const {
  return has(section, key) ? get_long(section, key) : fallback;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& v = raw(section, key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ContractError(origin_ + ": [" + section + "] " + key + " is not a boolean: " + v);
}

std::vector<long> ConfigFile::get_longs(const std::string& section, const std::string& key,
                                        const std::vector<long>& fallback) const {
  if (!has(section, key)) return fallback;
  const std::string& v = raw(section, key);
  std::vector<long> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    char* end = nullptr;
    const long x = std::strtol(item.c_str(), &end, 10);
    if (end == item.c_str() || *end != '\0') {
      throw ContractError(origin_ + ": [" + section + "] " + key + " has a bad entry: " + item);
    }
    out.push_back(x);
  }
  if (out.empty()) {
    throw ContractError(origin_ + ": [" + section + "] " + key + " is an empty list");
  }
  return out;
}

}  // namespace randlchs
