// Copyright 2026 The relim Authors
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

// Append-only JSON-lines files. A torn or unparsable last line is cut off on
// open; damage before the last line is an error.

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "relim/error.hpp"
#include "relim/json_io.hpp"

namespace relim::service {

struct LogContents {
  std::vector<Json> events;
  /// Set when a damaged tail was removed.
  std::string warning;
};

class EventLog {
 public:
  explicit EventLog(std::filesystem::path path) : path_(std::move(path)) {}

  const std::filesystem::path& path() const { return path_; }

  /// Reads every event, truncating a damaged final line in place.
  LogContents load() const {
    LogContents out;
    std::ifstream in(path_, std::ios::binary);
    if (!in) return out;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    std::size_t pos = 0;
    while (pos < data.size()) {
      const std::size_t nl = data.find('\n', pos);
      const bool complete = nl != std::string::npos;
      const std::string line = data.substr(pos, complete ? nl - pos : std::string::npos);
      Json ev;
      bool ok = complete;
      if (ok) {
        try {
          ev = Json::parse(line);
          ok = ev.is_object();
        } catch (const nlohmann::json::exception&) {
          ok = false;
        }
      }
      if (!ok) {
        const bool last = !complete || nl + 1 >= data.size();
        if (!last) {
          throw Error(path_.string() + ": corrupt event at byte " + std::to_string(pos));
        }
        std::filesystem::resize_file(path_, pos);
        out.warning = path_.string() + ": dropped a damaged trailing event at byte " +
                      std::to_string(pos);
        break;
      }
      out.events.push_back(std::move(ev));
      pos = nl + 1;
    }
    return out;
  }

  void append(const Json& event) const {
    std::filesystem::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    out << event.dump() << '\n';
    out.flush();
    if (!out) throw Error("cannot append to " + path_.string());
  }

 private:
  std::filesystem::path path_;
};

}  // namespace relim::service
