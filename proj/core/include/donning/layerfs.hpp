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

#ifndef DONNING_LAYERFS_HPP
#define DONNING_LAYERFS_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "donning/errors.hpp"

// In-memory model of directories, layers, mounting and diffing. Everything
// here is a pure value: no I/O, no hidden state, safe to share across
// threads once constructed.
namespace donning::layerfs {

/// A normalized absolute path naming a file inside an image.
///
/// Invariants: starts with "/", segments are non-empty and never "." or
/// "..", and there is no trailing slash. The root "/" is representable only
/// through root() and is valid solely in directory positions (mount points,
/// working directories); it never names a file.
class PathName {
 public:
  static PathName root() { return PathName("/"); }

  const std::string& str() const noexcept { return value_; }
  bool is_root() const noexcept { return value_ == "/"; }

  /// The directory-prefix form used in containment tests: "/a/b" -> "/a/b/",
  /// root -> "/".
  std::string dir_prefix() const { return is_root() ? value_ : value_ + "/"; }

  friend bool operator==(const PathName&, const PathName&) = default;
  friend bool operator<(const PathName& a, const PathName& b) { return a.value_ < b.value_; }

 private:
  explicit PathName(std::string v) : value_(std::move(v)) {}
  friend PathName normalize_path(std::string_view);
  friend PathName normalize_dir_path(std::string_view);
  friend PathName concat(const PathName&, const PathName&);
  friend std::optional<PathName> strip_prefix(const PathName&, const PathName&);

  std::string value_;
};

/// Transparent comparator so maps keyed by PathName can be probed with
/// plain strings (needed for descendant scans without building a PathName).
struct PathLess {
  using is_transparent = void;
  bool operator()(const PathName& a, const PathName& b) const { return a.str() < b.str(); }
  bool operator()(const PathName& a, std::string_view b) const { return a.str() < b; }
  bool operator()(std::string_view a, const PathName& b) const { return a < b.str(); }
};

/// Canonicalizes a raw path into a PathName: collapses duplicate slashes,
/// drops "." segments, strips the trailing slash.
///
/// Throws NotAbsolute when the path does not start with "/", DotDotRejected
/// on any ".." segment (relative traversal inside images is not defined),
/// and EmptyPath when nothing but "/" remains - a file path needs at least
/// one segment.
PathName normalize_path(std::string_view raw);

/// Same normalization for directory positions (mount points, workdirs),
/// where bare "/" is legal and yields the root.
PathName normalize_dir_path(std::string_view raw);

/// True iff f lies under the directory prefix p ("/a/b/" style, must end
/// with "/"). "/" contains every path.
bool contained_in(const PathName& f, std::string_view dir_prefix);

/// Places the file name sub under the mount point p: concat("/data",
/// "/test/a.txt") == "/data/test/a.txt"; concat(root, f) == f.
PathName concat(const PathName& p, const PathName& sub);

/// Inverse of concat: the suffix of f relative to mount point p, or nullopt
/// when f does not lie under p.
std::optional<PathName> strip_prefix(const PathName& f, const PathName& p);

struct RegularFile {
  std::string content;
  bool executable = false;

  friend bool operator==(const RegularFile&, const RegularFile&) = default;
};

/// Symlinks store their target as plain data and are never traversed
/// during path resolution.
struct SymlinkFile {
  std::string target;  // not required to be normalized, must be non-empty

  friend bool operator==(const SymlinkFile&, const SymlinkFile&) = default;
};

using FileNode = std::variant<RegularFile, SymlinkFile>;

/// One recorded change: a file written (engaged) or deleted (nullopt).
using Change = std::optional<FileNode>;

/// A partial map from path to file. Enforces that no key is a
/// directory-prefix of another key: /a and /a/b can never coexist, so
/// implicit directories never collide with files.
class Directory {
 public:
  using Map = std::map<PathName, FileNode, PathLess>;
  using const_iterator = Map::const_iterator;

  Directory() = default;

  /// Inserts or replaces. Throws PrefixCollision when the path would sit
  /// above or below an existing file.
  void put(PathName path, FileNode node);

  /// Removes the exact path; no-op when absent.
  bool erase(const PathName& path) { return entries_.erase(path) > 0; }

  const FileNode* find(const PathName& path) const;
  bool contains(const PathName& path) const { return entries_.contains(path); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  friend bool operator==(const Directory&, const Directory&) = default;

 private:
  Map entries_;
};

/// A partial map from path to Change. Duplicate paths are impossible by
/// construction; the prefix rule is checked only where a Directory is
/// formed from the layer's additions.
class Layer {
 public:
  using Map = std::map<PathName, Change, PathLess>;
  using const_iterator = Map::const_iterator;

  Layer() = default;

  void set(PathName path, Change change) { entries_.insert_or_assign(std::move(path), std::move(change)); }
  const Change* find(const PathName& path) const;
  bool mentions(const PathName& path) const { return entries_.contains(path); }
  bool erase(const PathName& path) { return entries_.erase(path) > 0; }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const_iterator begin() const { return entries_.begin(); }
  const_iterator end() const { return entries_.end(); }

  friend bool operator==(const Layer&, const Layer&) = default;

 private:
  Map entries_;
};

/// Mounts d_prime at location p into d: paths under p/ come from d_prime
/// (relocated), everything else comes from d. Files of d under p/ are
/// shadowed even when d_prime has no replacement for them.
///
/// Throws PrefixCollision when the combination is not a valid Directory,
/// e.g. d holds a file at p itself while d_prime is non-empty.
Directory mount(const Directory& d, const Directory& d_prime, const PathName& p);

/// The change set turning a into b: Put for added or altered files, Delete
/// for removed ones, nothing for unchanged paths. File equality is
/// structural (kind, bytes, executable flag, symlink target).
Layer diff(const Directory& a, const Directory& b);

/// Applies a layer to a directory; the inverse of diff, so that
/// apply(a, diff(a, b)) == b. Deletes are exact-path (subtree removal
/// arrives as per-file deletes); deleting an absent path is a no-op.
Directory apply(const Directory& d, const Layer& l);

/// Collapses a base-first stack into one layer: per path the latest layer
/// mentioning it wins. Deletes survive the merge - cancelling them against
/// earlier Puts is squashing, a different operation.
Layer merge_layers(std::span<const Layer> layers);

}  // namespace donning::layerfs

#endif  // DONNING_LAYERFS_HPP
