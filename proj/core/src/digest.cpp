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

#include <openssl/evp.h>

#include "donning/imagestore.hpp"
#include "util.hpp"

namespace donning::imagestore {

Digest Digest::from_hex(std::string_view hex) {
  if (hex.size() != 64) {
    throw BadDigest("digest must be 64 hex chars, got " + std::to_string(hex.size()));
  }
  for (char c : hex) {
    bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    if (!ok) throw BadDigest("digest contains non-hex or uppercase character");
  }
  return Digest(std::string(hex));
}

Digest digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  return Digest(detail::to_hex(md, len));
}

}  // namespace donning::imagestore
