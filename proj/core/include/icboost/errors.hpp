/*
 * Copyright 2026 The icboost Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace icboost {

enum class Errc {
  kConfig,              // invalid or missing configuration
  kData,                // malformed input data
  kDomain,              // value outside a loss/link domain
  kConvexity,           // non-positive second derivative or hessian sum
  kDegenerateResponse,  // no finite constant minimizer
  kUnsupportedVersion,  // model file written by an unknown format version
  kIo,                  // file system failure
};

const char* ErrcName(Errc code);

// Process exit code associated with an error category:
// 2 usage, 3 data, 4 domain/convexity, 5 I/O.
int ExitCode(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace icboost
