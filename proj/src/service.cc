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


#include "ganon/service.h"

#include <sys/socket.h>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "json.hpp"

namespace ganon {

namespace {

using nlohmann::json;

constexpr char kJson[] = "application/json";

void Reply(httplib::Response& res, const absl::StatusOr<json>& result) {
  if (result.ok()) {
    res.status = 200;
    res.set_content(result->dump(), kJson);
    return;
  }
  res.status = HttpStatusFor(result.status());
  res.set_content(
      json{{"error", std::string(result.status().message())}}.dump(), kJson);
}

absl::StatusOr<json> ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded()) {
    return absl::InvalidArgumentError("request body is not valid JSON");
  }
  return body;
}

constexpr char kPage[] = R"html(<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>ganon tuner</title>
<style>
body { font: 14px sans-serif; margin: 24px; }
table { border-collapse: collapse; }
td, th { padding: 2px 8px; text-align: right; border-bottom: 1px solid #eee; }
.bad { background: #fdd; }
input { width: 7em; }
#status { margin: 8px 0; color: #555; }
</style>
</head>
<body>
<h1>ganon tuner</h1>
<div id="status"></div>
<div>alpha <input id="alpha" value="1"></div>
<h2>Approximation coefficients</h2>
<div id="coefs"></div>
<button id="apply">Apply</button> <button id="commit">Commit</button>
<h2>Signals</h2>
<table id="signals"></table>
<script>
let state = null;
const fmt = v => Number(v).toFixed(4);
async function load() {
  state = await (await fetch('/api/state')).json();
  document.getElementById('coefs').innerHTML = state.a_tilde.map((v, i) =>
    `<label>a${i + 1} (${fmt(state.a_k[i])}) <input data-i="${i}" value="${fmt(v)}"></label> `).join('');
  render(state);
}
function render(s) {
  const bad = new Set(s.violations.map(v => v.index));
  let rows = '<tr><th>#</th><th>value</th><th>delta</th><th>delta~</th><th>c1~</th><th>c2~</th></tr>';
  state.order.forEach((p, i) => {
    rows += `<tr class="${bad.has(i + 1) ? 'bad' : ''}"><td>${i + 1}</td><td>${p}</td>` +
      `<td>${fmt(state.delta[i])}</td><td>${fmt(s.delta_tilde[i])}</td>` +
      `<td>${fmt(s.c1_tilde[i])}</td><td>${fmt(s.c2_tilde[i])}</td></tr>`;
  });
  document.getElementById('signals').innerHTML = rows;
  document.getElementById('status').textContent =
    `revision ${s.revision}` + (s.feasible ? '' : ' (infeasible)');
}
async function post(url, body) {
  const res = await fetch(url, {method: 'POST', body: JSON.stringify(body)});
  const payload = await res.json();
  if (!res.ok) throw new Error(payload.error || res.status);
  return payload;
}
document.getElementById('apply').onclick = async () => {
  const a = [...document.querySelectorAll('#coefs input')].map(e => Number(e.value));
  try {
    const s = await post('/api/coefficients',
      {revision: state.revision, a_tilde: a, alpha: Number(document.getElementById('alpha').value)});
    Object.assign(state, s);
    render(state);
  } catch (e) {
    document.getElementById('status').textContent = String(e);
    await load();
  }
};
document.getElementById('commit').onclick = async () => {
  try {
    const r = await post('/api/commit', {revision: state.revision});
    document.getElementById('status').textContent = 'wrote ' + r.paths.join(', ');
  } catch (e) {
    document.getElementById('status').textContent = String(e);
  }
};
load();
</script>
</body>
</html>
)html";

}  // namespace

const char* BuiltinPage() { return kPage; }

int HttpStatusFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 200;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
      return 400;
    case absl::StatusCode::kNotFound:
      return 404;
    case absl::StatusCode::kAborted:
      return 409;
    case absl::StatusCode::kFailedPrecondition:
      return 422;
    default:
      return 500;
  }
}

absl::Status RegisterRoutes(
    httplib::Server& server, Session& session,
    const std::optional<std::filesystem::path>& ui_dir) {
  server.Get("/api/state", [&session](const httplib::Request&,
                                      httplib::Response& res) {
    Reply(res, session.State());
  });
  server.Post("/api/coefficients", [&session](const httplib::Request& req,
                                              httplib::Response& res) {
    absl::StatusOr<json> body = ParseBody(req);
    Reply(res, body.ok() ? session.UpdateCoefficients(*body)
                         : absl::StatusOr<json>(body.status()));
  });
  server.Post("/api/commit", [&session](const httplib::Request& req,
                                        httplib::Response& res) {
    absl::StatusOr<json> body = ParseBody(req);
    Reply(res, body.ok() ? session.Commit(*body)
                         : absl::StatusOr<json>(body.status()));
  });
  if (ui_dir.has_value()) {
    if (!std::filesystem::is_directory(*ui_dir)) {
      return absl::NotFoundError(
          absl::StrCat("UI directory '", ui_dir->string(), "' not found"));
    }
    if (!server.set_mount_point("/", ui_dir->string())) {
      return absl::InternalError("cannot mount the UI directory");
    }
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPage, "text/html; charset=utf-8");
    });
  }
  return absl::OkStatus();
}

absl::Status Serve(Session& session, const std::string& host, int port,
                   const std::optional<std::filesystem::path>& ui_dir) {
  httplib::Server server;
  // The library default also sets SO_REUSEPORT, which lets a second server
  // share a busy port instead of failing.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  absl::Status routes = RegisterRoutes(server, session, ui_dir);
  if (!routes.ok()) return routes;
  if (!server.bind_to_port(host, port)) {
    return absl::UnavailableError(
        absl::StrCat("cannot listen on ", host, ":", port));
  }
  if (!server.listen_after_bind()) {
    return absl::InternalError("server stopped unexpectedly");
  }
  return absl::OkStatus();
}

}  // namespace ganon
