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

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerrlhz/core/error.hpp"

namespace kerrlhz::io {

using json = nlohmann::json;

/// Schema violation in a config file. `line` is 1-based, 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : Error(line > 0 ? "config error at line " + std::to_string(line) + ": " + what
                       : "config error: " + what),
        key_(std::move(key)),
        line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

namespace detail {

inline std::string pointer_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

}  // namespace detail

/// Line of every object key in a JSON text, keyed by JSON pointer.
inline std::map<std::string, int> key_lines(const std::string& text) {
  struct Frame {
    bool object;
    std::string path;
    std::size_t index = 0;
    std::string key;
  };
  std::map<std::string, int> out;
  std::vector<Frame> stack;
  int line = 1;
  auto child_path = [&]() -> std::string {
    if (stack.empty()) return "";
    const auto& f = stack.back();
    return f.path + "/" + (f.object ? detail::pointer_token(f.key) : std::to_string(f.index));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '{' || c == '[') {
      stack.push_back({c == '{', child_path(), 0, {}});
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
    } else if (c == ',') {
      if (!stack.empty() && !stack.back().object) ++stack.back().index;
    } else if (c == '"') {
      const std::size_t start = i;
      for (++i; i < text.size() && text[i] != '"'; ++i)
        if (text[i] == '\\') ++i;
      if (i >= text.size()) break;
      std::size_t j = i + 1;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r' || text[j] == '\n')) ++j;
      if (!stack.empty() && stack.back().object && j < text.size() && text[j] == ':') {
        std::string key;
        try {
          key = json::parse(text.substr(start, i - start + 1)).get<std::string>();
        } catch (const json::exception&) {
          key = text.substr(start + 1, i - start - 1);
        }
        stack.back().key = key;
        out.emplace(stack.back().path + "/" + detail::pointer_token(key), line);
      }
    }
  }
  return out;
}

enum class FieldKind { number, integer, boolean, string, numbers, integers, number_matrix, object, objects, flag_or_object };

struct FieldSpec;
using Schema = std::map<std::string, FieldSpec>;

struct FieldSpec {
  FieldKind kind;
  const Schema* nested = nullptr;  // object, objects, flag_or_object
};

/// Parsed config with the source text kept for line lookups.
struct Config {
  json root = json::object();
  std::map<std::string, int> lines;
  std::string source = "<defaults>";

  static Config parse(const std::string& text, std::string source = "<config>") {
    Config c;
    c.source = std::move(source);
    try {
      c.root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("", 0, e.what());
    }
    if (!c.root.is_object()) throw ConfigError("", 1, "top level must be a JSON object");
    c.lines = key_lines(text);
    return c;
  }

  int line_of(const std::string& pointer) const {
    const auto it = lines.find(pointer);
    return it == lines.end() ? 0 : it->second;
  }
};

namespace detail {

inline const char* kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::number: return "a number";
    case FieldKind::integer: return "a non-negative integer";
    case FieldKind::boolean: return "true or false";
    case FieldKind::string: return "a string";
    case FieldKind::numbers: return "an array of numbers";
    case FieldKind::integers: return "an array of non-negative integers";
    case FieldKind::number_matrix: return "an array of arrays of numbers";
    case FieldKind::object: return "an object";
    case FieldKind::objects: return "an array of objects";
    case FieldKind::flag_or_object: return "true, false or an object";
  }
  return "?";
}

inline bool is_count(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); }

inline bool all_of(const json& v, bool (*pred)(const json&)) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (!pred(e)) return false;
  return true;
}

inline void validate_object(const Config& c, const json& obj, const Schema& schema, const std::string& path);

inline void validate_field(const Config& c, const json& v, const FieldSpec& spec, const std::string& key,
                           const std::string& path) {
  auto is_num = [](const json& e) { return e.is_number(); };
  bool ok = false;
  switch (spec.kind) {
    case FieldKind::number: ok = v.is_number(); break;
    case FieldKind::integer: ok = is_count(v); break;
    case FieldKind::boolean: ok = v.is_boolean(); break;
    case FieldKind::string: ok = v.is_string(); break;
    case FieldKind::numbers: ok = all_of(v, +is_num); break;
    case FieldKind::integers: ok = all_of(v, &is_count); break;
    case FieldKind::number_matrix:
      ok = all_of(v, [](const json& row) { return all_of(row, [](const json& e) { return e.is_number(); }); });
      break;
    case FieldKind::object: ok = v.is_object(); break;
    case FieldKind::objects: ok = all_of(v, [](const json& e) { return e.is_object(); }); break;
    case FieldKind::flag_or_object: ok = v.is_boolean() || v.is_object(); break;
  }
  if (!ok) throw ConfigError(key, c.line_of(path), "key '" + key + "' must be " + kind_name(spec.kind));
  if (spec.nested == nullptr) return;
  if (v.is_object()) validate_object(c, v, *spec.nested, path);
  if (spec.kind == FieldKind::objects)
    for (std::size_t i = 0; i < v.size(); ++i) validate_object(c, v[i], *spec.nested, path + "/" + std::to_string(i));
}

inline void validate_object(const Config& c, const json& obj, const Schema& schema, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    const std::string p = path + "/" + pointer_token(key);
    const auto it = schema.find(key);
    if (it == schema.end()) throw ConfigError(key, c.line_of(p), "unknown key '" + key + "'");
    validate_field(c, value, it->second, key, p);
  }
}

}  // namespace detail

/// Throws ConfigError naming the first unknown or mistyped key.
inline void validate(const Config& c, const Schema& schema) { detail::validate_object(c, c.root, schema, ""); }

/// Typed lookup with a default for absent keys; `obj` must already be validated.
template <class T>
T value_or(const json& obj, const std::string& key, T fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : it->template get<T>();
}

}  // namespace kerrlhz::io
