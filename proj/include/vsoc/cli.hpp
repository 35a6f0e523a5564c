/*
 * Copyright 2026 The vsoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <vector>

namespace vsoc::cli {

/// Entry point for the `vsoc` tool. Returns 0 on success, 1 on a validation
/// error and 2 on an I/O error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace vsoc::cli
