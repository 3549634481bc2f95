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

#include "icboost/errors.hpp"

namespace icboost {

const char* ErrcName(Errc code) {
  switch (code) {
    case Errc::kConfig: return "configuration error";
    case Errc::kData: return "data error";
    case Errc::kDomain: return "domain error";
    case Errc::kConvexity: return "convexity error";
    case Errc::kDegenerateResponse: return "degenerate response";
    case Errc::kUnsupportedVersion: return "unsupported version";
    case Errc::kIo: return "I/O error";
  }
  return "error";
}

int ExitCode(Errc code) {
  switch (code) {
    case Errc::kConfig: return 2;
    case Errc::kData:
    case Errc::kUnsupportedVersion: return 3;
    case Errc::kDomain:
    case Errc::kConvexity:
    case Errc::kDegenerateResponse: return 4;
    case Errc::kIo: return 5;
  }
  return 1;
}

}  // namespace icboost
