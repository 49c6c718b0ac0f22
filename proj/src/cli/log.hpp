/*
 * Copyright 2026 The textrait Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace textrait::cli {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// TEXTRAIT_LOG=error|warn|info|debug, default warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("TEXTRAIT_LOG");
    const std::string_view v = env ? env : "";
    if (v == "error") return LogLevel::error;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

template <typename... Args>
void log(LogLevel level, const Args&... args) {
  if (level > log_level()) return;
  static constexpr const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "textrait " << names[static_cast<int>(level)] << ": ";
  (std::cerr << ... << args);
  std::cerr << '\n';
}

}  // namespace textrait::cli
