// Copyright 2026 The symtwirl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal stderr logger. Level comes from SYMTWIRL_LOG (error, info, debug);
// unset or unrecognized means error.

#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace symtwirl::log {

enum class Level { Error = 0, Info = 1, Debug = 2 };

inline Level parse_level(std::string_view text) {
  if (text == "debug") return Level::Debug;
  if (text == "info") return Level::Info;
  return Level::Error;
}

inline Level level() {
  static const Level current = [] {
    const char* env = std::getenv("SYMTWIRL_LOG");
    return env ? parse_level(env) : Level::Error;
  }();
  return current;
}

inline bool enabled(Level l) { return static_cast<int>(l) <= static_cast<int>(level()); }

inline void write(Level l, std::string_view tag, const std::string& message) {
  if (enabled(l)) std::cerr << "[symtwirl " << tag << "] " << message << '\n';
}

inline void error(const std::string& message) { write(Level::Error, "error", message); }
inline void info(const std::string& message) { write(Level::Info, "info", message); }
inline void debug(const std::string& message) { write(Level::Debug, "debug", message); }

}  // namespace symtwirl::log
