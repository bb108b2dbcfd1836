/*
 * Copyright 2026 The PatSTEG Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace patsteg {

/// Writes `contents` to `path` via a sibling temp file and rename, so
/// readers never observe a partial file. Throws DataError when the
/// destination is not writable.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// Reads a whole file. Throws DataError naming the path when missing.
std::string read_file(const std::filesystem::path& path);

/// Splits on a single delimiter, keeping empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char delim);

/// Splits on runs of spaces and tabs, dropping empty fields.
std::vector<std::string_view> split_whitespace(std::string_view line);

/// Drops a trailing '\r' so CRLF files parse like LF files.
std::string_view strip_cr(std::string_view line);

bool is_blank(std::string_view line);

}  // namespace patsteg
