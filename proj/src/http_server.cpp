// Copyright 2026 The Ur Workbench Authors
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

#include "ur/http_server.hpp"

namespace ur {
namespace {

void Send(httplib::Response& res, const ApiResponse& api) {
  res.status = api.status;
  res.set_content(api.body.dump(), "application/json");
}

}  // namespace

void RegisterRoutes(httplib::Server& server, GameService& service) {
  server.Post("/api/games", [&service](const httplib::Request& req, httplib::Response& res) {
    Send(res, service.CreateSession(req.body));
  });
  server.Get(R"(/api/games/([0-9a-f]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    Send(res, service.GetState(req.matches[1].str()));
  });
  server.Post(R"(/api/games/([0-9a-f]+)/moves)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                Send(res, service.SubmitMove(req.matches[1].str(), req.body));
              });
  server.Get("/api/meta", [&service](const httplib::Request&, httplib::Response& res) {
    Send(res, service.Meta());
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(R"({"error":"not_found","message":"no such endpoint"})", "application/json");
    }
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(nlohmann::json{{"error", "internal"}, {"message", message}}.dump(), "application/json");
  });
}

}  // namespace ur
