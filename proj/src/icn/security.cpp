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

#include "icnfed/icn/security.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include "icnfed/common/error.hpp"

namespace icnfed::icn {

Bytes hmac_sha256(std::span<const std::uint8_t> key, std::span<const std::uint8_t> message) {
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), message.data(),
            message.size(), out.data(), &len)) {
    throw Error("HMAC computation failed");
  }
  out.resize(len);
  return out;
}

namespace {

Bytes certificate_message(const Name& key_locator, const Bytes& key) {
  auto msg = encode_name(key_locator);
  msg.insert(msg.end(), key.begin(), key.end());
  return msg;
}

bool equal_bytes(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  return a.size() == b.size() && CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace

Signer::Signer(Name key_locator, Bytes key) : key_locator_(std::move(key_locator)), key_(std::move(key)) {
  if (key_locator_.empty()) throw InvalidArgument("signer needs a key locator");
  if (key_.empty()) throw InvalidArgument("signer needs a key");
}

Bytes Signer::sign(std::span<const std::uint8_t> message) const { return hmac_sha256(key_, message); }

TrustAnchor::TrustAnchor(Bytes secret) : secret_(std::move(secret)) {
  if (secret_.empty()) throw InvalidArgument("trust anchor needs a secret");
}

Certificate TrustAnchor::certify(const Signer& signer) const {
  return Certificate{signer.key_locator(), signer.key(),
                     hmac_sha256(secret_, certificate_message(signer.key_locator(), signer.key()))};
}

std::pair<Signer, Certificate> TrustAnchor::issue(const Name& key_locator) const {
  auto derivation = to_bytes("key-derivation:");
  auto name = encode_name(key_locator);
  derivation.insert(derivation.end(), name.begin(), name.end());
  Signer signer(key_locator, hmac_sha256(secret_, derivation));
  auto cert = certify(signer);
  return {std::move(signer), std::move(cert)};
}

KeyRegistry::KeyRegistry(Bytes anchor_verification_key) : anchor_key_(std::move(anchor_verification_key)) {}

bool KeyRegistry::validates(const Certificate& cert) const {
  if (cert.key_locator.empty() || cert.key.empty()) return false;
  return equal_bytes(hmac_sha256(anchor_key_, certificate_message(cert.key_locator, cert.key)),
                     cert.anchor_signature);
}

bool KeyRegistry::add(const Certificate& cert) {
  if (!validates(cert)) return false;
  keys_.insert_or_assign(cert.key_locator, cert.key);
  return true;
}

bool KeyRegistry::knows(const Name& key_locator) const { return keys_.contains(key_locator); }

bool KeyRegistry::verify(const Name& key_locator, std::span<const std::uint8_t> message,
                         std::span<const std::uint8_t> signature) const {
  auto it = keys_.find(key_locator);
  if (it == keys_.end()) return false;
  return equal_bytes(hmac_sha256(it->second, message), signature);
}

void sign(DataPacket& p, const Signer& signer) {
  p.signature.key_locator = signer.key_locator();
  p.signature.value = signer.sign(signed_portion(p));
}

void sign(InterestPacket& p, const Signer& signer) {
  p.signature = SignatureBlock{signer.key_locator(),
                               signer.sign(signed_portion(p, signer.key_locator()))};
}

bool verify(const DataPacket& p, const KeyRegistry& registry) {
  return registry.verify(p.signature.key_locator, signed_portion(p), p.signature.value);
}

bool verify(const InterestPacket& p, const KeyRegistry& registry) {
  if (!p.signature) return false;
  return registry.verify(p.signature->key_locator, signed_portion(p, p.signature->key_locator),
                         p.signature->value);
}

}  // namespace icnfed::icn
