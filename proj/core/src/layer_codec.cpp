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

// The "LDL1" layer blob format:
//
//   magic "LDL1"
//   u32be entry count
//   entries, sorted strictly ascending by UTF-8 path bytes:
//     u16be path length, path bytes
//     kind byte: 0 = delete, 1 = regular, 2 = regular+executable, 3 = symlink
//     kind 1/2: u64be content length, content bytes
//     kind 3:   u16be target length, target bytes
//
// Deletions carry a kind byte of their own instead of reserved whiteout
// filenames. The content digest is the SHA-256 over the whole blob.

#include <cstdint>

#include "donning/imagestore.hpp"

namespace donning::imagestore {

namespace {

constexpr std::string_view kMagic = "LDL1";

enum Kind : unsigned char {
  kDelete = 0,
  kRegular = 1,
  kRegularExec = 2,
  kSymlink = 3,
};

void put_u16(std::string& out, std::uint16_t v) {
  out += static_cast<char>(v >> 8);
  out += static_cast<char>(v & 0xff);
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out += static_cast<char>((v >> shift) & 0xff);
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out += static_cast<char>((v >> shift) & 0xff);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view take(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw TruncatedBlob("layer blob ends mid-record");
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint64_t take_uint(int width) {
    std::string_view raw = take(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (char c : raw) v = (v << 8) | static_cast<unsigned char>(c);
    return v;
  }

  bool done() const noexcept { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_layer(const layerfs::Layer& l) {
  if (l.size() > 0xffffffffu) throw MalformedBlob("layer has too many entries to encode");
  std::string out;
  out += kMagic;
  put_u32(out, static_cast<std::uint32_t>(l.size()));
  // Map iteration order is byte order on paths, which is the canonical
  // entry order.
  for (const auto& [path, change] : l) {
    const std::string& p = path.str();
    if (p.size() > 0xffff) throw MalformedBlob("path too long to encode: " + p);
    put_u16(out, static_cast<std::uint16_t>(p.size()));
    out += p;
    if (!change.has_value()) {
      out += static_cast<char>(kDelete);
      continue;
    }
    if (const auto* reg = std::get_if<layerfs::RegularFile>(&*change)) {
      out += static_cast<char>(reg->executable ? kRegularExec : kRegular);
      put_u64(out, reg->content.size());
      out += reg->content;
    } else {
      const auto& link = std::get<layerfs::SymlinkFile>(*change);
      if (link.target.empty()) throw MalformedBlob("symlink with empty target at " + p);
      if (link.target.size() > 0xffff) throw MalformedBlob("symlink target too long at " + p);
      out += static_cast<char>(kSymlink);
      put_u16(out, static_cast<std::uint16_t>(link.target.size()));
      out += link.target;
    }
  }
  return out;
}

layerfs::Layer decode_layer(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(kMagic.size()) != kMagic) throw BadMagic("layer blob lacks LDL1 magic");
  const std::uint32_t count = static_cast<std::uint32_t>(r.take_uint(4));
  layerfs::Layer out;
  std::string prev_path;
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto path_len = static_cast<std::size_t>(r.take_uint(2));
    std::string path(r.take(path_len));
    if (i > 0) {
      if (path == prev_path) throw DuplicatePath("path appears twice: " + path);
      if (path < prev_path) throw UnsortedEntries("entry '" + path + "' after '" + prev_path + "'");
    }
    layerfs::PathName name = [&] {
      try {
        return layerfs::normalize_path(path);
      } catch (const PathError& e) {
        throw MalformedBlob("invalid path in blob: " + std::string(e.what()));
      }
    }();
    if (name.str() != path) throw MalformedBlob("non-canonical path in blob: " + path);
    const auto kind = static_cast<unsigned char>(r.take(1)[0]);
    switch (kind) {
      case kDelete:
        out.set(std::move(name), std::nullopt);
        break;
      case kRegular:
      case kRegularExec: {
        const auto len = r.take_uint(8);
        layerfs::RegularFile reg{std::string(r.take(static_cast<std::size_t>(len))), kind == kRegularExec};
        out.set(std::move(name), layerfs::FileNode(std::move(reg)));
        break;
      }
      case kSymlink: {
        const auto len = static_cast<std::size_t>(r.take_uint(2));
        std::string target(r.take(len));
        if (target.empty()) throw MalformedBlob("symlink with empty target at " + path);
        out.set(std::move(name), layerfs::FileNode(layerfs::SymlinkFile{std::move(target)}));
        break;
      }
      default:
        throw MalformedBlob("unknown kind byte " + std::to_string(kind) + " at " + path);
    }
    prev_path = std::move(path);
  }
  if (!r.done()) throw MalformedBlob("trailing bytes after last entry");
  return out;
}

}  // namespace donning::imagestore
