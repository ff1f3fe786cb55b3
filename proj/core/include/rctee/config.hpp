// Copyright (c) 2026 The RCTEE Simulator Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>

#include "rctee/bytes.hpp"

namespace rctee {

Bytes read_file(const std::string& path);
void write_file(const std::string& path, ByteSpan data);

/// Write-new-then-rename; readers never observe a partial file.
void atomic_write_file(const std::string& path, ByteSpan data);

/// Plain key = value lines; '#' starts a comment; whitespace trimmed.
std::map<std::string, std::string> parse_config(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Port lookup with environment override: env_var beats the config value.
uint16_t config_port(const std::map<std::string, std::string>& cfg, const std::string& key,
                     const char* env_var, uint16_t fallback);

}  // namespace rctee
