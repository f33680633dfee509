// Copyright 2026 The kerrlhz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <unistd.h>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "kerrlhz/core/error.hpp"

namespace kerrlhz::io {

class IoError : public Error {
 public:
  using Error::Error;
};

/// Shortest decimal string that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

struct CsvField {
  std::string text;
  CsvField(double v) : text(format_number(v)) {}
  CsvField(int v) : text(std::to_string(v)) {}
  CsvField(long v) : text(std::to_string(v)) {}
  CsvField(long long v) : text(std::to_string(v)) {}
  CsvField(unsigned v) : text(std::to_string(v)) {}
  CsvField(unsigned long v) : text(std::to_string(v)) {}
  CsvField(unsigned long long v) : text(std::to_string(v)) {}
  CsvField(std::string s) : text(std::move(s)) {}
  CsvField(const char* s) : text(s) {}
};

/// Comma-separated table; `comments` are emitted as leading "# " lines.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_comment(std::string line) { comments_.push_back(std::move(line)); }

  void add_row(const std::vector<CsvField>& fields) {
    if (fields.size() != columns_.size())
      throw InvalidArgument("csv: row has " + std::to_string(fields.size()) + " fields, header has " +
                            std::to_string(columns_.size()));
    std::vector<std::string> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      if (f.text.find_first_of(",\"\n") != std::string::npos)
        throw InvalidArgument("csv: field needs quoting: " + f.text);
      row.push_back(f.text);
    }
    rows_.push_back(std::move(row));
  }

  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }

  std::string str() const {
    std::string out;
    for (const auto& c : comments_) out += "# " + c + "\n";
    auto line = [&out](const std::vector<std::string>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += v[i];
      }
      out += '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
    return out;
  }

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `content` next to `path` and renames it into place, so readers never
/// see a partial file. Parent directories are created.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(static_cast<long long>(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace kerrlhz::io
