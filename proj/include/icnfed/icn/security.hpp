// Copyright 2026 The icnfed Authors
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

#pragma once

#include <map>
#include <optional>
#include <string>

#include "icnfed/icn/packet.hpp"

namespace icnfed::icn {

// Default signature scheme: HMAC-SHA256 over the signed portion of a packet.
// Keys are symmetric, so the "verification key" a certificate carries is the
// signing key itself; this is adequate for a closed simulation and keeps the
// sign/verify contract identical to a public-key scheme.

struct Certificate {
  Name key_locator;
  Bytes key;
  Bytes anchor_signature;
};

/// A named signing key.
class Signer {
 public:
  Signer(Name key_locator, Bytes key);

  const Name& key_locator() const noexcept { return key_locator_; }
  const Bytes& key() const noexcept { return key_; }
  Bytes sign(std::span<const std::uint8_t> message) const;

 private:
  Name key_locator_;
  Bytes key_;
};

/// Issues certificates binding a key locator to a key.
class TrustAnchor {
 public:
  explicit TrustAnchor(Bytes secret);

  const Bytes& verification_key() const noexcept { return secret_; }
  Certificate certify(const Signer& signer) const;
  /// Derives a deterministic key for `key_locator` and certifies it.
  std::pair<Signer, Certificate> issue(const Name& key_locator) const;

 private:
  Bytes secret_;
};

Bytes hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message);

/// Certificate store rooted at one trust anchor.
class KeyRegistry {
 public:
  explicit KeyRegistry(Bytes anchor_verification_key);

  bool validates(const Certificate& cert) const;
  /// Adds the certificate iff it validates. Re-adding is a no-op.
  bool add(const Certificate& cert);
  bool knows(const Name& key_locator) const;

  /// False for unknown key locators.
  bool verify(const Name& key_locator, std::span<const std::uint8_t> message,
              std::span<const std::uint8_t> signature) const;

 private:
  Bytes anchor_key_;
  std::map<Name, Bytes> keys_;
};

void sign(DataPacket& p, const Signer& signer);
void sign(InterestPacket& p, const Signer& signer);
bool verify(const DataPacket& p, const KeyRegistry& registry);
/// Unsigned Interests do not verify.
bool verify(const InterestPacket& p, const KeyRegistry& registry);

}  // namespace icnfed::icn
