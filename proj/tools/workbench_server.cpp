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

#include <CLI11.hpp>

#include <iostream>

#include "relim/service/http.hpp"

int main(int argc, char** argv) {
  CLI::App app{"relim workbench HTTP service"};
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  CLI11_PARSE(app, argc, argv);

  try {
    relim::service::Config cfg = relim::service::load_config(config_path);
    relim::service::Workbench wb(cfg);
    httplib::Server server;
    relim::service::bind(server, wb);
    std::clog << "workbench listening on " << cfg.listen_addr << ", data in " << cfg.data_dir
              << '\n';
    if (!server.listen(cfg.host(), cfg.port())) {
      std::cerr << "cannot listen on " << cfg.listen_addr << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
