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

#include <algorithm>

#include "donning/imagestore.hpp"

namespace donning::imagestore {

namespace {

using nlohmann::json;

bool is_repo_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }
bool is_repo_char(char c) { return is_repo_alnum(c) || c == '.' || c == '_' || c == '-'; }

void validate_repository(std::string_view repo) {
  if (repo.empty()) throw BadImageRef("empty repository name");
  std::size_t start = 0;
  while (start <= repo.size()) {
    std::size_t end = repo.find('/', start);
    if (end == std::string_view::npos) end = repo.size();
    std::string_view seg = repo.substr(start, end - start);
    if (seg.empty()) throw BadImageRef("empty segment in repository '" + std::string(repo) + "'");
    // Segments never start or end with punctuation, so tag paths cannot
    // smuggle "." or ".." components.
    if (!std::all_of(seg.begin(), seg.end(), is_repo_char) || !is_repo_alnum(seg.front()) ||
        !is_repo_alnum(seg.back())) {
      throw BadImageRef("invalid repository segment '" + std::string(seg) + "'");
    }
    if (end == repo.size()) break;
    start = end + 1;
  }
}

void validate_version(std::string_view version) {
  if (version.empty()) throw BadImageRef("empty version");
  auto alnum_ = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  };
  if (!alnum_(version.front())) {
    throw BadImageRef("version must start with an alphanumeric: '" + std::string(version) + "'");
  }
  for (char c : version) {
    if (!(alnum_(c) || c == '.' || c == '-')) {
      throw BadImageRef("invalid character in version '" + std::string(version) + "'");
    }
  }
}

std::vector<std::string> parse_string_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw BadConfig("'" + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw BadConfig("'" + key + "' must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<int> parse_port_list(const json& j) {
  if (!j.is_array()) throw BadConfig("'exposed_ports' must be a list of integers");
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) throw BadConfig("'exposed_ports' must be a list of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

void validate_ports(const std::vector<int>& ports) {
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i] < 1 || ports[i] > 65535) {
      throw BadConfig("port out of range: " + std::to_string(ports[i]));
    }
    if (i > 0 && ports[i] <= ports[i - 1]) {
      throw BadConfig("exposed_ports must be sorted ascending and unique");
    }
  }
}

}  // namespace

ImageRef ImageRef::parse(std::string_view text) {
  std::size_t colon = text.find(':');
  if (colon != std::string_view::npos && text.find(':', colon + 1) != std::string_view::npos) {
    throw BadImageRef("more than one ':' in image reference '" + std::string(text) + "'");
  }
  ImageRef ref;
  if (colon == std::string_view::npos) {
    ref.repository = std::string(text);
  } else {
    ref.repository = std::string(text.substr(0, colon));
    ref.version = std::string(text.substr(colon + 1));
  }
  validate_repository(ref.repository);
  validate_version(ref.version);
  return ref;
}

ConfigOverrides config_overrides_from_json(const nlohmann::json& j, bool ignore_unknown) {
  if (!j.is_object()) throw BadConfig("config overrides must be a JSON object");
  ConfigOverrides ov;
  for (const auto& [key, value] : j.items()) {
    if (key == "cmd") {
      ov.cmd = parse_string_list(value, "cmd");
    } else if (key == "entrypoint") {
      ov.entrypoint = parse_string_list(value, "entrypoint");
    } else if (key == "env") {
      ov.env = parse_string_list(value, "env");
    } else if (key == "workingdir") {
      if (!value.is_string()) throw BadConfig("'workingdir' must be a string");
      ov.workingdir = layerfs::normalize_dir_path(value.get<std::string>());
    } else if (key == "user") {
      if (!value.is_string()) throw BadConfig("'user' must be a string");
      ov.user = value.get<std::string>();
    } else if (key == "exposed_ports") {
      std::vector<int> ports = parse_port_list(value);
      std::sort(ports.begin(), ports.end());
      ports.erase(std::unique(ports.begin(), ports.end()), ports.end());
      validate_ports(ports);
      ov.exposed_ports = std::move(ports);
    } else if (!ignore_unknown) {
      throw BadConfig("unknown config key '" + key + "'");
    }
  }
  return ov;
}

ImageConfig ConfigOverrides::applied_to(ImageConfig base) const {
  if (cmd) base.cmd = *cmd;
  if (entrypoint) base.entrypoint = *entrypoint;
  if (env) base.env = *env;
  if (workingdir) base.workingdir = *workingdir;
  if (user) base.user = *user;
  if (exposed_ports) base.exposed_ports = *exposed_ports;
  return base;
}

std::string encode_config(const ImageConfig& c) {
  validate_ports(c.exposed_ports);
  // nlohmann's default object is keyed by std::map, so dump() emits keys
  // in lexicographic order with no insignificant whitespace: canonical.
  json j;
  j["created"] = std::string(kEpochZero);
  json layers = json::array();
  for (const Digest& d : c.layers) layers.push_back(d.hex());
  j["layers"] = std::move(layers);
  if (c.cmd) j["cmd"] = *c.cmd;
  if (c.entrypoint) j["entrypoint"] = *c.entrypoint;
  if (!c.env.empty()) j["env"] = c.env;
  if (c.workingdir) j["workingdir"] = c.workingdir->str();
  if (c.user) j["user"] = *c.user;
  if (!c.exposed_ports.empty()) j["exposed_ports"] = c.exposed_ports;
  return j.dump();
}

ImageConfig decode_config(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw BadConfig(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw BadConfig("config must be a JSON object");

  ImageConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "created") {
      if (!value.is_string() || value.get<std::string>() != kEpochZero) {
        throw BadConfig("created must be the fixed epoch-zero timestamp");
      }
    } else if (key == "layers") {
      for (const std::string& hex : parse_string_list(value, "layers")) {
        c.layers.push_back(Digest::from_hex(hex));
      }
    } else if (key == "cmd") {
      c.cmd = parse_string_list(value, "cmd");
    } else if (key == "entrypoint") {
      c.entrypoint = parse_string_list(value, "entrypoint");
    } else if (key == "env") {
      c.env = parse_string_list(value, "env");
      if (c.env.empty()) throw BadConfig("empty env must be omitted");
    } else if (key == "workingdir") {
      if (!value.is_string()) throw BadConfig("'workingdir' must be a string");
      c.workingdir = layerfs::normalize_dir_path(value.get<std::string>());
    } else if (key == "user") {
      if (!value.is_string()) throw BadConfig("'user' must be a string");
      c.user = value.get<std::string>();
    } else if (key == "exposed_ports") {
      c.exposed_ports = parse_port_list(value);
      if (c.exposed_ports.empty()) throw BadConfig("empty exposed_ports must be omitted");
      validate_ports(c.exposed_ports);
    } else {
      throw BadConfig("unknown config key '" + key + "'");
    }
  }
  if (!j.contains("created")) throw BadConfig("config lacks the created timestamp");
  if (!j.contains("layers")) throw BadConfig("config lacks the layer list");
  return c;
}

}  // namespace donning::imagestore
