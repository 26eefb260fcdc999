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

// Text-to-mask backend that runs an external command per request.
//
// The command is run through /bin/sh -c. It receives one JSON object on
// stdin:
//
//   {"prompt": "...", "organ": "<path to organ png>", "seed": 17,
//    "out_dir": "<scratch dir>", "width": 512, "height": 512}
//
// and prints the paths of the masks it wrote, one per line (relative paths
// are resolved against out_dir). Each file must be named
// <anything>__<ClassToken>.png. A nonzero exit status is a failure.

#ifndef AURAD_EXTERNAL_BACKEND_H_
#define AURAD_EXTERNAL_BACKEND_H_

#include <atomic>
#include <filesystem>
#include <string>

#include "aurad/backends.h"

namespace aurad {

struct CommandResult {
  int exit_code = 0;
  std::string out;
};

// Runs `command` through /bin/sh -c, feeding `input` on stdin and capturing
// stdout. Throws IoError if the process cannot be started.
CommandResult run_command(const std::string& command, const std::string& input);

class ExternalCommandTextToMask final : public TextToMaskBackend {
 public:
  // Scratch directories are created under `work_dir`.
  ExternalCommandTextToMask(std::string command, std::filesystem::path work_dir);

  std::vector<PathologyAnnotation> generate(const PromptSpec& prompt,
                                            const OrganMap& organ,
                                            std::uint64_t seed) override;
  std::string name() const override { return "external-command"; }

 private:
  std::string command_;
  std::filesystem::path work_dir_;
  std::atomic<std::uint64_t> counter_{0};
};

}  // namespace aurad

#endif  // AURAD_EXTERNAL_BACKEND_H_
