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

// The icboost command line: train, predict, validate, importance and
// benchmark subcommands over CSV files.

#pragma once

#include <iosfwd>

namespace icboost::cli {

// Parses and runs one command. Returns the process exit code: 0 on success,
// 2 for usage or configuration errors, 3 for bad data or model files, 4 for
// loss-domain and convexity failures, 5 for I/O failures.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace icboost::cli
