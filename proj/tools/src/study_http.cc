/* Copyright 2026 The aurad Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aurad_tools/study_http.h"

#include <httplib.h>

#include <fstream>
#include <iterator>
#include <nlohmann/json.hpp>

#include "aurad/error.h"
#include "aurad/study.h"

namespace aurad {
namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const char* kind,
                const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", kind}, {"message", message}}.dump(), kJson);
}

// Maps service exceptions onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const UnknownRater& e) {
    send_error(res, 404, "unknown_rater", e.what());
  } catch (const UnknownItem& e) {
    send_error(res, 404, "unknown_item", e.what());
  } catch (const DuplicateResponse& e) {
    send_error(res, 409, "duplicate_response", e.what());
  } catch (const OutOfRangeValue& e) {
    send_error(res, 422, "out_of_range", e.what());
  } catch (const IoError& e) {
    send_error(res, 500, "io_error", e.what());
  } catch (const Error& e) {
    send_error(res, 400, "bad_request", e.what());
  }
}

}  // namespace

void register_study_routes(httplib::Server& server, StudyService& service) {
  server.Get(R"(/api/session/([^/]+)/next)",
             [&service](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 res.set_content(service.next_item(req.matches[1]).dump(), kJson);
               });
             });

  server.Post(R"(/api/session/([^/]+)/response)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                nlohmann::json body;
                std::string item;
                std::optional<StudyTask> task;
                int value = 0;
                try {
                  body = nlohmann::json::parse(req.body);
                  item = body.at("item").get<std::string>();
                  task = study_task_from_string(body.at("task").get<std::string>());
                  value = body.at("value").get<int>();
                } catch (const nlohmann::json::exception& e) {
                  send_error(res, 400, "bad_request", e.what());
                  return;
                }
                if (!task) {
                  send_error(res, 400, "bad_request", "unknown task");
                  return;
                }
                guarded(res, [&] {
                  res.set_content(service.submit(req.matches[1], item, *task, value).dump(),
                                  kJson);
                });
              });

  server.Get("/api/export.csv", [&service](const httplib::Request&, httplib::Response& res) {
    res.set_content(service.export_csv(), "text/csv");
  });

  server.Get("/api/summary", [&service](const httplib::Request&, httplib::Response& res) {
    res.set_content(service.summary_json().dump(), kJson);
  });

  server.Get("/api/options", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(StudyService::option_labels().dump(), kJson);
  });

  server.Get(R"(/media/([0-9a-f]+))",
             [&service](const httplib::Request& req, httplib::Response& res) {
               const auto ref = service.media(req.matches[1]);
               if (!ref) {
                 send_error(res, 404, "unknown_media", "no such media");
                 return;
               }
               std::ifstream in(ref->path, std::ios::binary);
               if (!in) {
                 // The path is server-side detail; keep it out of the reply.
                 send_error(res, 500, "io_error", "media unavailable");
                 return;
               }
               std::string bytes((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
               res.set_content(std::move(bytes), ref->content_type);
             });
}

}  // namespace aurad
