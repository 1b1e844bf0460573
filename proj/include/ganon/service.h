// Copyright 2026 The Ganon Authors
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


// Local HTTP front end of a Session.
//
//   GET  /api/state         session state
//   POST /api/coefficients  {revision, a_tilde, alpha?}
//   POST /api/commit        {revision}
//   GET  /                  UI assets from `ui_dir`, or a built-in page
//
// Status codes: 400 malformed body, 409 stale revision, 422 infeasible
// commit.

#ifndef GANON_SERVICE_H_
#define GANON_SERVICE_H_

#include <filesystem>
#include <optional>

#include "absl/status/status.h"
#include "ganon/session.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace ganon {

int HttpStatusFor(const absl::Status& status);

// Installs the routes on `server`; `session` must outlive it.
absl::Status RegisterRoutes(httplib::Server& server, Session& session,
                            const std::optional<std::filesystem::path>& ui_dir);

// Blocks until the server stops. Fails if the port cannot be bound.
absl::Status Serve(Session& session, const std::string& host, int port,
                   const std::optional<std::filesystem::path>& ui_dir);

// Minimal self-contained page used when no UI bundle is supplied.
const char* BuiltinPage();

}  // namespace ganon

#endif  // GANON_SERVICE_H_
