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

// HTTP surface of the reader study.
//
//   GET  /api/session/{rater}/next      next blinded item, or {"done": true}
//   POST /api/session/{rater}/response  {"item", "task", "value"} -> {"ok": true}
//   GET  /api/export.csv                responses with sources revealed
//   GET  /api/summary                   rates and agreement
//   GET  /api/options                   rating scale labels
//   GET  /media/{id}                    image bytes
//
// Errors come back as {"error": <kind>, "message": <text>} with 400 for
// malformed requests, 404 for unknown raters, items and media, 409 for
// duplicates and 422 for out-of-range values.

#ifndef AURAD_TOOLS_STUDY_HTTP_H_
#define AURAD_TOOLS_STUDY_HTTP_H_

namespace httplib {
class Server;
}

namespace aurad {

class StudyService;

// `service` must outlive `server`.
void register_study_routes(httplib::Server& server, StudyService& service);

}  // namespace aurad

#endif  // AURAD_TOOLS_STUDY_HTTP_H_
