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

#ifndef DONNING_ERRORS_HPP
#define DONNING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace donning {

/// Base class for every error this library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- path normalization ---
struct PathError : Error {
  using Error::Error;
};
struct NotAbsolute final : PathError {
  using PathError::PathError;
};
struct DotDotRejected final : PathError {
  using PathError::PathError;
};
struct EmptyPath final : PathError {
  using PathError::PathError;
};

/// A directory (or an operation producing one) would hold both a file and
/// a file nested beneath it, e.g. /a and /a/b.
struct PrefixCollision final : Error {
  using Error::Error;
};

// --- blob and config codecs ---
struct MalformedBlob : Error {
  using Error::Error;
};
struct BadMagic final : MalformedBlob {
  using MalformedBlob::MalformedBlob;
};
struct TruncatedBlob final : MalformedBlob {
  using MalformedBlob::MalformedBlob;
};
struct UnsortedEntries final : MalformedBlob {
  using MalformedBlob::MalformedBlob;
};
struct DuplicatePath final : MalformedBlob {
  using MalformedBlob::MalformedBlob;
};
struct BadConfig final : Error {
  using Error::Error;
};
struct BadDigest final : Error {
  using Error::Error;
};
struct BadImageRef final : Error {
  using Error::Error;
};

// --- store ---
struct UnknownDigest final : Error {
  using Error::Error;
};
/// Stored bytes no longer hash to their name. Never swallowed; the CLI
/// turns this into exit code 3.
struct DigestMismatch final : Error {
  using Error::Error;
};
struct UnknownTag final : Error {
  using Error::Error;
};
struct DanglingLayers final : Error {
  using Error::Error;
};
struct MissingBlob final : Error {
  using Error::Error;
};

// --- v1 image model ---
struct MissingParent final : Error {
  using Error::Error;
};
struct CycleDetected final : Error {
  using Error::Error;
};
struct DuplicateImageId final : Error {
  using Error::Error;
};

// --- control files and the engine ---
struct ControlFileError : Error {
  using Error::Error;
};
struct SyntaxError final : ControlFileError {
  SyntaxError(const std::string& what, int line)
      : ControlFileError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};
struct SchemaError final : ControlFileError {
  using ControlFileError::ControlFileError;
};
struct DuplicateTask final : ControlFileError {
  using ControlFileError::ControlFileError;
};
struct UnknownStepKind final : ControlFileError {
  using ControlFileError::ControlFileError;
};
struct UnknownVariable final : ControlFileError {
  using ControlFileError::ControlFileError;
};
struct DuplicateVariable final : ControlFileError {
  using ControlFileError::ControlFileError;
};
struct UnknownTask final : Error {
  using Error::Error;
};
struct TaskCycle final : Error {
  using Error::Error;
};

// --- executors ---
struct ExecutorError : Error {
  using Error::Error;
};
struct CommandNotFound final : ExecutorError {
  using ExecutorError::ExecutorError;
};
struct ExecTimeout final : ExecutorError {
  using ExecutorError::ExecutorError;
};
struct SpawnFailure final : ExecutorError {
  using ExecutorError::ExecutorError;
};
struct RuntimeUnavailable final : ExecutorError {
  using ExecutorError::ExecutorError;
};
struct ImagePullFailed final : ExecutorError {
  using ExecutorError::ExecutorError;
};
struct UnsupportedFileType final : ExecutorError {
  using ExecutorError::ExecutorError;
};

// --- autobuild ---
struct FieldCountError final : Error {
  FieldCountError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};
struct DuplicatePackageRevision final : Error {
  using Error::Error;
};
struct UnknownPackager final : Error {
  using Error::Error;
};
struct UnknownPlaceholder final : Error {
  using Error::Error;
};

}  // namespace donning

#endif  // DONNING_ERRORS_HPP
