// Copyright 2026 The attrsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP API over the selection engine. Runs execute on worker threads and are
// observed by polling /api/runs/{id}/events with a cursor. Every run, live or
// replayed, is persisted as a trace file in the traces directory, and the run
// registry is rebuilt from those files at startup.
//
// Endpoints (JSON bodies, errors as {"error": "..."}):
//   GET  /api/health
//   GET  /api/datasets
//   GET  /api/datasets/{id}/stats
//   POST /api/runs                    {"dataset", "config": {...}} -> 201
//   GET  /api/runs
//   GET  /api/runs/{id}
//   GET  /api/runs/{id}/events?cursor=N
//   POST /api/evaluate                {"dataset", "attributes", "config"}
//   POST /api/compare                 {"dataset", "config"}
//   POST /api/replays                 multipart "trace" file, or the raw body;
//                                     optional "detached" and "pace" fields or
//                                     query parameters -> 201

#ifndef ATTRSEL_SERVICE_H_
#define ATTRSEL_SERVICE_H_

#include <memory>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace attrsel {

struct ServiceOptions {
  // Hosted datasets are the *.csv files here; the id is the file stem and an
  // optional <stem>.meta sidecar supplies collection times.
  std::string datasets_dir;
  std::string traces_dir;
};

class Service {
 public:
  // Fails with BadDirectory if either directory is missing.
  static absl::StatusOr<std::unique_ptr<Service>> Create(
      const ServiceOptions& options);

  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds without serving. Port 0 picks a free port. Fails with PortInUse.
  absl::Status Bind(const std::string& host, int port);
  int port() const;

  // Serves until Stop(). Requires a successful Bind().
  absl::Status Serve();

  // Stops serving and waits for running selections to finish. Safe to call
  // from another thread or more than once.
  void Stop();

 private:
  class Impl;
  explicit Service(std::unique_ptr<Impl> impl);

  std::unique_ptr<Impl> impl_;
};

}  // namespace attrsel

#endif  // ATTRSEL_SERVICE_H_
