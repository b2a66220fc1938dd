// Copyright 2026 The Donning Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Private helpers shared by the core sources. Not installed.

#ifndef DONNING_SRC_UTIL_HPP
#define DONNING_SRC_UTIL_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace donning::detail {

std::string read_file(const std::filesystem::path& p);

/// Writes via a temp file in the same directory followed by an atomic
/// rename, so readers never observe partial blobs.
void write_file_atomic(const std::filesystem::path& p, std::string_view bytes);

std::string to_hex(const unsigned char* data, std::size_t len);

}  // namespace donning::detail

#endif  // DONNING_SRC_UTIL_HPP
