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

#ifndef DONNING_IMAGESTORE_HPP
#define DONNING_IMAGESTORE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "donning/errors.hpp"
#include "donning/layerfs.hpp"

// Content-addressed persistence of layers and image configs: the v2
// manifest model (ordered digest sequences), the legacy v1 parent-chain
// model, union resolution, squashing, and the wrap operation that puts a
// directory on top of a base image as exactly one new layer.
namespace donning::imagestore {

/// A SHA-256 content address: 64 lowercase hex characters.
class Digest {
 public:
  /// Validates and adopts a hex string; throws BadDigest otherwise.
  static Digest from_hex(std::string_view hex);

  const std::string& hex() const noexcept { return hex_; }
  static constexpr std::string_view algorithm() noexcept { return "sha256"; }

  friend bool operator==(const Digest&, const Digest&) = default;
  friend bool operator<(const Digest& a, const Digest& b) { return a.hex_ < b.hex_; }

 private:
  explicit Digest(std::string hex) : hex_(std::move(hex)) {}
  friend Digest digest(std::string_view bytes);

  std::string hex_;
};

/// SHA-256 of the given bytes.
Digest digest(std::string_view bytes);

/// A human-readable image name: repository plus version, "repo:ver".
/// Repository segments are lowercase [a-z0-9._-] separated by "/";
/// versions are [A-Za-z0-9_][A-Za-z0-9._-]*. Neither may contain ":".
struct ImageRef {
  std::string repository;
  std::string version = "latest";

  /// Parses "repo" or "repo:version"; the version defaults to "latest".
  static ImageRef parse(std::string_view text);

  std::string str() const { return repository + ":" + version; }

  friend bool operator==(const ImageRef&, const ImageRef&) = default;
  friend bool operator<(const ImageRef& a, const ImageRef& b) {
    return std::tie(a.repository, a.version) < std::tie(b.repository, b.version);
  }
};

/// Timestamp pinned into every config; equal inputs must produce
/// bit-equal outputs, so wall clocks never leak into the store.
inline constexpr std::string_view kEpochZero = "1970-01-01T00:00:00Z";

/// The runtime configuration object of an image: the ordered layer stack
/// (base first, the most recently donned layer last) plus the container
/// defaults carried along with it.
struct ImageConfig {
  std::vector<Digest> layers;  // base-first
  std::optional<std::vector<std::string>> cmd;
  std::optional<std::vector<std::string>> entrypoint;
  std::vector<std::string> env;  // "KEY=VALUE", order preserved
  std::optional<layerfs::PathName> workingdir;
  std::optional<std::string> user;
  std::vector<int> exposed_ports;  // sorted ascending, unique

  friend bool operator==(const ImageConfig&, const ImageConfig&) = default;
};

/// Field-wise replacements for wrap and for control-file "config" blocks;
/// a present field replaces the base's value wholesale.
struct ConfigOverrides {
  std::optional<std::vector<std::string>> cmd;
  std::optional<std::vector<std::string>> entrypoint;
  std::optional<std::vector<std::string>> env;
  std::optional<layerfs::PathName> workingdir;
  std::optional<std::string> user;
  std::optional<std::vector<int>> exposed_ports;

  ImageConfig applied_to(ImageConfig base) const;

  friend bool operator==(const ConfigOverrides&, const ConfigOverrides&) = default;
};

/// Builds overrides from a JSON object holding any of cmd, entrypoint,
/// env, workingdir, user, exposed_ports. Ports are canonicalized (sorted,
/// deduplicated). Unknown keys raise BadConfig unless ignore_unknown is
/// set, which v1 meta maps need since they are free-form.
ConfigOverrides config_overrides_from_json(const nlohmann::json& j, bool ignore_unknown = false);

/// A legacy v1 image: random id, optional parent id, one layer, free-form
/// meta. The parent graph must be acyclic.
struct V1Image {
  std::string id;  // 64 hex chars
  std::optional<std::string> parent;
  layerfs::Layer layer;
  nlohmann::json meta = nlohmann::json::object();
};

// --- canonical codecs ---

/// Serializes a layer into the "LDL1" blob format: magic, u32be entry
/// count, entries sorted ascending by path bytes. Deterministic: the same
/// layer always yields identical bytes.
std::string encode_layer(const layerfs::Layer& l);

/// Inverse of encode_layer; rejects anything that is not in canonical
/// form (BadMagic, TruncatedBlob, UnsortedEntries, DuplicatePath,
/// MalformedBlob).
layerfs::Layer decode_layer(std::string_view bytes);

/// Canonical config serialization: UTF-8 JSON with lexicographically
/// sorted keys, no insignificant whitespace, absent fields omitted, and
/// the created timestamp pinned to epoch zero.
std::string encode_config(const ImageConfig& c);
ImageConfig decode_config(std::string_view bytes);

// --- the store ---

/// Content-addressed blob store plus tag table, rooted at a directory:
///   <root>/blobs/sha256/<hex>        blob bytes
///   <root>/tags/<repository>/<ver>   config digest hex + "\n"
///   <root>/lock                      advisory lock for tag mutations
/// Blob writes are idempotent write-to-temp-then-rename creations; every
/// read verifies the digest and throws DigestMismatch on corruption.
class Store {
 public:
  /// Opens (creating if needed) a store rooted at the given directory.
  explicit Store(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  Digest put_blob(std::string_view bytes);
  std::string get_blob(const Digest& d) const;  // UnknownDigest, DigestMismatch
  bool has_blob(const Digest& d) const;

  Digest put_layer(const layerfs::Layer& l);
  layerfs::Layer get_layer(const Digest& d) const;

  Digest put_config(const ImageConfig& c);
  ImageConfig get_config(const Digest& d) const;

  /// Binds ref to a config digest, overwriting any prior binding. The
  /// config and all its layers must resolve (DanglingLayers otherwise).
  void tag(const ImageRef& ref, const Digest& config_digest);
  Digest lookup_tag(const ImageRef& ref) const;  // UnknownTag
  std::vector<std::pair<ImageRef, Digest>> list_tags() const;

  std::filesystem::path blob_path(const Digest& d) const;

 private:
  std::filesystem::path tag_path(const ImageRef& ref) const;

  std::filesystem::path root_;
};

// --- resolution and image algebra ---

/// Looks f up through the stack, topmost (last) layer first; the first
/// layer mentioning f decides. Returns nullopt for files no layer ever
/// changed or whose newest mention is a deletion.
std::optional<layerfs::FileNode> resolve_file(const Store& store, const ImageConfig& c,
                                              const layerfs::PathName& f);

/// Materializes the union view of the whole stack as a Directory.
layerfs::Directory enumerate(const Store& store, const ImageConfig& c);

/// Flattens the stack into a single layer holding exactly the visible
/// files; matched additions and deletions cancel out. The runtime config
/// is carried over unchanged.
ImageConfig squash(Store& store, const ImageConfig& c);

/// The donning step: wraps dir (relocated under `at`) as one new layer on
/// top of base - or as the only layer when base is absent - applies the
/// overrides, stores the result and tags it. Returns the config digest.
Digest wrap(Store& store, const std::optional<ImageConfig>& base, const layerfs::Directory& dir,
            const layerfs::PathName& at, const ConfigOverrides& overrides, const ImageRef& ref);

/// Converts a v1 parent chain into the content-addressed model: walks
/// parent links from `top` to the root, stores each layer, and returns a
/// config whose stack is root-first and whose runtime fields come from
/// the meta maps with child keys overriding parent keys.
ImageConfig linearize_v1(Store& store, const std::vector<V1Image>& images, const std::string& top_id);

/// Writes ref's config and every reachable blob to dest:
///   <dest>/index                    "<repository>:<version> <config-hex>\n"
///   <dest>/blobs/sha256/<hex>       blob bytes
void export_image(const Store& store, const ImageRef& ref, const std::filesystem::path& dest);

/// Admits an exported layout into the store, verifying every blob against
/// its digest before anything is written (DigestMismatch on tampering,
/// MissingBlob on gaps). Returns the imported ref.
ImageRef import_image(Store& store, const std::filesystem::path& src);

}  // namespace donning::imagestore

#endif  // DONNING_IMAGESTORE_HPP
