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

// A small pool running cancellable background jobs.

#pragma once

#include <condition_variable>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "relim/error.hpp"
#include "relim/json_io.hpp"

namespace relim::service {

enum class JobStatus { kQueued, kRunning, kDone, kFailed, kCancelled };

inline const char* to_string(JobStatus s) {
  switch (s) {
    case JobStatus::kQueued: return "queued";
    case JobStatus::kRunning: return "running";
    case JobStatus::kDone: return "done";
    case JobStatus::kFailed: return "failed";
    case JobStatus::kCancelled: return "cancelled";
  }
  return "unknown";
}

/// Work returns its JSON result or throws; Cancelled marks the job
/// cancelled.
using JobFn = std::function<Json(std::stop_token)>;

struct JobInfo {
  std::string id;
  std::string kind;
  JobStatus status = JobStatus::kQueued;
  Json result;
  std::string error;
  /// HTTP status the error maps to.
  int error_status = 0;
};

using ErrorClassifier = std::function<int(const std::exception&)>;

class JobPool {
 public:
  JobPool(int workers, ErrorClassifier classify) : classify_(std::move(classify)) {
    if (workers < 1) throw InvalidArgument("job_workers must be positive");
    for (int i = 0; i < workers; ++i) {
      threads_.emplace_back([this](std::stop_token st) { loop(st); });
    }
  }

  ~JobPool() {
    {
      std::lock_guard lock(mu_);
      for (auto& [id, j] : jobs_) j->stop.request_stop();
    }
    for (auto& t : threads_) t.request_stop();
    cv_.notify_all();
  }

  JobPool(const JobPool&) = delete;
  JobPool& operator=(const JobPool&) = delete;

  void submit(const std::string& id, std::string kind, JobFn fn) {
    auto j = std::make_shared<Job>();
    j->info.id = id;
    j->info.kind = std::move(kind);
    j->fn = std::move(fn);
    {
      std::lock_guard lock(mu_);
      jobs_[id] = j;
      queue_.push_back(j);
    }
    cv_.notify_one();
  }

  std::optional<JobInfo> get(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return std::nullopt;
    return it->second->info;
  }

  /// Requests cancellation; false for unknown ids.
  bool cancel(const std::string& id) {
    std::lock_guard lock(mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return false;
    it->second->stop.request_stop();
    if (it->second->info.status == JobStatus::kQueued) {
      it->second->info.status = JobStatus::kCancelled;
    }
    return true;
  }

  /// Blocks until the job leaves the queued and running states.
  std::optional<JobInfo> wait(const std::string& id) const {
    std::unique_lock lock(mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return std::nullopt;
    auto j = it->second;
    done_.wait(lock, [&] {
      return j->info.status != JobStatus::kQueued && j->info.status != JobStatus::kRunning;
    });
    return j->info;
  }

 private:
  struct Job {
    JobInfo info;
    JobFn fn;
    std::stop_source stop;
  };

  void loop(std::stop_token st) {
    while (true) {
      std::shared_ptr<Job> j;
      {
        std::unique_lock lock(mu_);
        cv_.wait(lock, st, [&] { return !queue_.empty(); });
        if (st.stop_requested()) return;
        j = queue_.front();
        queue_.pop_front();
        if (j->info.status == JobStatus::kCancelled) {
          done_.notify_all();
          continue;
        }
        j->info.status = JobStatus::kRunning;
      }
      JobInfo out;
      try {
        out.result = j->fn(j->stop.get_token());
        out.status = JobStatus::kDone;
      } catch (const Cancelled&) {
        out.status = JobStatus::kCancelled;
      } catch (const std::exception& e) {
        out.status = JobStatus::kFailed;
        out.error = e.what();
        out.error_status = classify_(e);
      }
      {
        std::lock_guard lock(mu_);
        j->info.status = out.status;
        j->info.result = std::move(out.result);
        j->info.error = std::move(out.error);
        j->info.error_status = out.error_status;
      }
      done_.notify_all();
    }
  }

  ErrorClassifier classify_;
  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  mutable std::condition_variable done_;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::deque<std::shared_ptr<Job>> queue_;
  std::vector<std::jthread> threads_;
};

}  // namespace relim::service
