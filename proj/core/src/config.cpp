// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rctee/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rctee {

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Err::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string& s = ss.str();
  return Bytes(s.begin(), s.end());
}

void write_file(const std::string& path, ByteSpan data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Err::Io, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
  if (!out) raise(Err::Io, "short write to " + path);
}

void atomic_write_file(const std::string& path, ByteSpan data) {
  std::string tmp = path + ".tmp";
  write_file(tmp, data);
  if (std::rename(tmp.c_str(), path.c_str()) != 0) raise(Err::Io, "rename to " + path);
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) raise(Err::BadParams, "config line without '=': " + line);
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  Bytes raw = read_file(path);
  return parse_config(std::string(raw.begin(), raw.end()));
}

uint16_t config_port(const std::map<std::string, std::string>& cfg, const std::string& key,
                     const char* env_var, uint16_t fallback) {
  if (env_var) {
    if (const char* env = std::getenv(env_var); env && *env) return uint16_t(std::stoul(env));
  }
  auto it = cfg.find(key);
  if (it != cfg.end()) return uint16_t(std::stoul(it->second));
  return fallback;
}

}  // namespace rctee
