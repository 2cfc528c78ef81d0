// Copyright 2026 The FtF Toolkit Authors.
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

// HTTP front end for AnnotationService, versioned under /api/v1.
//
//   GET  /api/v1/arguments[?fallacy_type=]
//   GET  /api/v1/templates/{fallacy_type}
//   GET  /api/v1/tasks?annotator=…[&fallacy_type=][&status=]
//   POST /api/v1/tasks                 {"annotator_id", "argument_id"}
//   POST /api/v1/annotations           annotation record; X-Annotator-Id header
//   POST /api/v1/adjudications         annotation record (annotator ignored)
//   GET  /api/v1/agreement
//   GET  /api/v1/coverage
//   GET  /api/v1/export[?at=k][&policy=annotators|consensus]
//   GET  /api/v1/health
//
// Errors are {"error": <kind>, "message": …} with 4xx/5xx status codes;
// validation failures add "report".

#ifndef FTF_ANNOTATION_HTTP_H_
#define FTF_ANNOTATION_HTTP_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ftf/annotation_service.h"

namespace ftf {

struct ApiServerOptions {
  // Built UI assets, mounted at "/" when set.
  std::optional<std::filesystem::path> static_dir;
};

class ApiServer {
 public:
  ApiServer(AnnotationService& service, ApiServerOptions options = {});
  ~ApiServer();

  // Returns the bound port (ephemeral when `port` is 0), or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ftf

#endif  // FTF_ANNOTATION_HTTP_H_
