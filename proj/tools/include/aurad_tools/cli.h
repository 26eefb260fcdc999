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

#ifndef AURAD_TOOLS_CLI_H_
#define AURAD_TOOLS_CLI_H_

#include <ostream>

namespace aurad::cli {

// Process exit codes. These are part of the scripting interface.
enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

// Entry point of the `aurad` executable, with the output streams injected
// so the commands can be driven in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aurad::cli

#endif  // AURAD_TOOLS_CLI_H_
