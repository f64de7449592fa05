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

// cpp-httplib transport for the workbench.

#pragma once

#include <httplib.h>

#include <string>

#include "relim/service/workbench.hpp"

namespace relim::service {

/// Routes every GET, POST and DELETE request to `wb`.
inline void bind(httplib::Server& server, Workbench& wb) {
  auto forward = [&wb](const char* method) {
    return [&wb, method](const httplib::Request& req, httplib::Response& res) {
      const Response r = wb.handle(method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    };
  };
  server.Get(".*", forward("GET"));
  server.Post(".*", forward("POST"));
  server.Delete(".*", forward("DELETE"));
}

}  // namespace relim::service
