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

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>

#include "donning/imagestore.hpp"
#include "util.hpp"

namespace donning::imagestore {

namespace fs = std::filesystem;

namespace {

// Advisory exclusive lock over the store's tag table; blob writes are
// idempotent renames and need no coordination.
class TagLock {
 public:
  explicit TagLock(const fs::path& lock_file) {
    fd_ = ::open(lock_file.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw Error("cannot open lock file '" + lock_file.string() + "'");
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error("cannot lock '" + lock_file.string() + "'");
    }
  }
  TagLock(const TagLock&) = delete;
  TagLock& operator=(const TagLock&) = delete;
  ~TagLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_;
};

}  // namespace

Store::Store(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_ / "blobs" / "sha256");
  fs::create_directories(root_ / "tags");
}

fs::path Store::blob_path(const Digest& d) const { return root_ / "blobs" / "sha256" / d.hex(); }

fs::path Store::tag_path(const ImageRef& ref) const {
  // Ref validity (no "..", no ":", no empty segments) is enforced by
  // ImageRef::parse; re-running it here keeps hand-built refs honest.
  ImageRef::parse(ref.str());
  fs::path p = root_ / "tags";
  for (std::size_t start = 0; start <= ref.repository.size();) {
    std::size_t end = ref.repository.find('/', start);
    if (end == std::string::npos) end = ref.repository.size();
    p /= ref.repository.substr(start, end - start);
    start = end + 1;
    if (end == ref.repository.size()) break;
  }
  return p / ref.version;
}

Digest Store::put_blob(std::string_view bytes) {
  Digest d = digest(bytes);
  fs::path target = blob_path(d);
  if (!fs::exists(target)) detail::write_file_atomic(target, bytes);
  return d;
}

bool Store::has_blob(const Digest& d) const { return fs::exists(blob_path(d)); }

std::string Store::get_blob(const Digest& d) const {
  fs::path target = blob_path(d);
  if (!fs::exists(target)) throw UnknownDigest("no blob for digest " + d.hex());
  std::string bytes = detail::read_file(target);
  if (!(digest(bytes) == d)) {
    throw DigestMismatch("blob '" + target.string() + "' does not hash to its name");
  }
  return bytes;
}

Digest Store::put_layer(const layerfs::Layer& l) { return put_blob(encode_layer(l)); }

layerfs::Layer Store::get_layer(const Digest& d) const { return decode_layer(get_blob(d)); }

Digest Store::put_config(const ImageConfig& c) { return put_blob(encode_config(c)); }

ImageConfig Store::get_config(const Digest& d) const { return decode_config(get_blob(d)); }

void Store::tag(const ImageRef& ref, const Digest& config_digest) {
  ImageConfig c = [&] {
    try {
      return get_config(config_digest);
    } catch (const UnknownDigest&) {
      throw UnknownDigest("cannot tag " + ref.str() + ": no config blob " + config_digest.hex());
    }
  }();
  if (c.layers.empty()) throw BadConfig("refusing to tag a config with no layers");
  for (const Digest& layer_digest : c.layers) {
    try {
      get_layer(layer_digest);
    } catch (const UnknownDigest&) {
      throw DanglingLayers("config " + config_digest.hex() + " references missing layer " +
                           layer_digest.hex());
    }
  }
  TagLock lock(root_ / "lock");
  fs::path p = tag_path(ref);
  fs::create_directories(p.parent_path());
  detail::write_file_atomic(p, config_digest.hex() + "\n");
}

Digest Store::lookup_tag(const ImageRef& ref) const {
  fs::path p = tag_path(ref);
  if (!fs::exists(p)) throw UnknownTag("no such tag: " + ref.str());
  std::string content = detail::read_file(p);
  while (!content.empty() && (content.back() == '\n' || content.back() == '\r')) content.pop_back();
  return Digest::from_hex(content);
}

std::vector<std::pair<ImageRef, Digest>> Store::list_tags() const {
  std::vector<std::pair<ImageRef, Digest>> out;
  fs::path tags = root_ / "tags";
  for (const auto& entry : fs::recursive_directory_iterator(tags)) {
    if (!entry.is_regular_file()) continue;
    fs::path rel = fs::relative(entry.path(), tags);
    ImageRef ref;
    ref.version = rel.filename().string();
    ref.repository = rel.parent_path().generic_string();
    if (ref.repository.empty()) continue;  // stray file directly under tags/
    out.emplace_back(ref, lookup_tag(ref));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace donning::imagestore
