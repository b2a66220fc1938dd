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

#include "donning/layerfs.hpp"

#include <algorithm>
#include <vector>

namespace donning::layerfs {

namespace {

// Shared normalization core; `allow_root` distinguishes file positions
// from directory positions.
std::string normalize_impl(std::string_view raw, bool allow_root) {
  if (raw.empty() || raw.front() != '/') {
    throw NotAbsolute("path is not absolute: '" + std::string(raw) + "'");
  }
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && raw[i] == '/') ++i;
    std::size_t start = i;
    while (i < raw.size() && raw[i] != '/') ++i;
    std::string_view seg = raw.substr(start, i - start);
    if (seg.empty() || seg == ".") continue;
    if (seg == "..") {
      throw DotDotRejected("'..' segment rejected in '" + std::string(raw) + "'");
    }
    out += '/';
    out += seg;
  }
  if (out.empty()) {
    if (!allow_root) {
      throw EmptyPath("'" + std::string(raw) + "' normalizes to the bare root");
    }
    out = "/";
  }
  return out;
}

}  // namespace

PathName normalize_path(std::string_view raw) {
  return PathName(normalize_impl(raw, /*allow_root=*/false));
}

PathName normalize_dir_path(std::string_view raw) {
  return PathName(normalize_impl(raw, /*allow_root=*/true));
}

bool contained_in(const PathName& f, std::string_view dir_prefix) {
  if (dir_prefix.empty() || dir_prefix.back() != '/') {
    throw Error("directory prefix must end with '/': '" + std::string(dir_prefix) + "'");
  }
  return f.str().starts_with(dir_prefix);
}

PathName concat(const PathName& p, const PathName& sub) {
  if (p.is_root()) return sub;
  return PathName(p.str() + sub.str());
}

std::optional<PathName> strip_prefix(const PathName& f, const PathName& p) {
  if (p.is_root()) return f;
  if (!contained_in(f, p.dir_prefix())) return std::nullopt;
  return PathName(f.str().substr(p.str().size()));
}

const FileNode* Directory::find(const PathName& path) const {
  auto it = entries_.find(path);
  return it == entries_.end() ? nullptr : &it->second;
}

void Directory::put(PathName path, FileNode node) {
  if (path.is_root()) {
    throw PrefixCollision("the root cannot name a file");
  }
  auto it = entries_.find(path);
  if (it != entries_.end()) {
    // Replacing the value of an existing key cannot disturb the invariant.
    it->second = std::move(node);
    return;
  }
  // Ancestor check: no existing file may sit at a proper prefix of path.
  const std::string& v = path.str();
  for (std::size_t pos = v.find('/', 1); pos != std::string::npos; pos = v.find('/', pos + 1)) {
    if (entries_.find(std::string_view(v.data(), pos)) != entries_.end()) {
      throw PrefixCollision("'" + v + "' collides with file '" + v.substr(0, pos) + "'");
    }
  }
  // Descendant check: no existing file may live under path/.
  std::string prefix = path.dir_prefix();
  auto lb = entries_.lower_bound(std::string_view(prefix));
  if (lb != entries_.end() && lb->first.str().starts_with(prefix)) {
    throw PrefixCollision("'" + v + "' collides with file '" + lb->first.str() + "'");
  }
  entries_.emplace(std::move(path), std::move(node));
}

const Change* Layer::find(const PathName& path) const {
  auto it = entries_.find(path);
  return it == entries_.end() ? nullptr : &it->second;
}

Directory mount(const Directory& d, const Directory& d_prime, const PathName& p) {
  Directory out;
  const std::string prefix = p.dir_prefix();
  for (const auto& [f, node] : d) {
    if (!contained_in(f, prefix)) out.put(f, node);
  }
  for (const auto& [f_sub, node] : d_prime) {
    out.put(concat(p, f_sub), node);
  }
  return out;
}

Layer diff(const Directory& a, const Directory& b) {
  Layer out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      out.set(ia->first, std::nullopt);
      ++ia;
    } else if (ib->first < ia->first) {
      out.set(ib->first, ib->second);
      ++ib;
    } else {
      if (!(ia->second == ib->second)) out.set(ib->first, ib->second);
      ++ia;
      ++ib;
    }
  }
  for (; ia != a.end(); ++ia) out.set(ia->first, std::nullopt);
  for (; ib != b.end(); ++ib) out.set(ib->first, ib->second);
  return out;
}

Directory apply(const Directory& d, const Layer& l) {
  Directory out = d;
  // Deletes first: a layer may delete /a while putting /a/b, and the put
  // must not trip over the file it replaces. Paths are unique within a
  // layer, so the two passes touch disjoint keys.
  for (const auto& [path, change] : l) {
    if (!change.has_value()) out.erase(path);
  }
  for (const auto& [path, change] : l) {
    if (change.has_value()) out.put(path, *change);
  }
  return out;
}

Layer merge_layers(std::span<const Layer> layers) {
  Layer out;
  for (const Layer& l : layers) {
    for (const auto& [path, change] : l) out.set(path, change);
  }
  return out;
}

}  // namespace donning::layerfs
