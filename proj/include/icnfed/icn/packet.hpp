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

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "icnfed/geo/name.hpp"

namespace icnfed::icn {

using Bytes = std::vector<std::uint8_t>;
using FaceId = std::uint32_t;

/// Default Interest lifetime, which is also the PIT entry lifetime.
inline constexpr std::int64_t kDefaultLifetimeMs = 4000;
/// Largest Data payload a producer emits; bigger content is segmented.
inline constexpr std::size_t kDefaultMaxPayload = 4096;

struct SignatureBlock {
  Name key_locator;
  Bytes value;
  friend bool operator==(const SignatureBlock&, const SignatureBlock&) = default;
};

struct InterestPacket {
  Name name;
  std::uint64_t nonce = 0;
  std::int64_t lifetime_ms = kDefaultLifetimeMs;
  std::optional<SignatureBlock> signature;
  friend bool operator==(const InterestPacket&, const InterestPacket&) = default;
};

struct DataPacket {
  Name name;
  Bytes payload;
  std::int64_t freshness_ms = 0;
  SignatureBlock signature;
  const Name& key_locator() const noexcept { return signature.key_locator; }
  friend bool operator==(const DataPacket&, const DataPacket&) = default;
};

using InterestPtr = std::shared_ptr<const InterestPacket>;
using DataPtr = std::shared_ptr<const DataPacket>;
using Packet = std::variant<InterestPtr, DataPtr>;

const Name& name_of(const Packet& p);

// Wire format, NDN-style TLV with variable-length type/length numbers:
//   Interest  0x05 { Name, Nonce(0x0A, 8 bytes BE), Lifetime(0x0C),
//                    [KeyLocator(0x1C){Name}, SignatureValue(0x17)] }
//   Data      0x06 { Name, Freshness(0x19), Content(0x15),
//                    KeyLocator(0x1C){Name}, SignatureValue(0x17) }
//   Name      0x07 { Component(0x08)... }
// Non-negative integers use the shortest of 1, 2, 4 or 8 big-endian bytes.
Bytes encode(const InterestPacket& p);
Bytes encode(const DataPacket& p);
Bytes encode_name(const Name& n);

/// Throws ParseError on malformed input or trailing bytes.
Packet decode(std::span<const std::uint8_t> wire);

/// Encoded size in bytes, computed without materialising the encoding.
std::size_t wire_size(const InterestPacket& p);
std::size_t wire_size(const DataPacket& p);
std::size_t wire_size(const Packet& p);

/// The bytes covered by a signature: the encoded Name, Freshness, Content and
/// KeyLocator elements for Data; Name and KeyLocator for Interests.
Bytes signed_portion(const DataPacket& p);
Bytes signed_portion(const InterestPacket& p, const Name& key_locator);

Bytes to_bytes(std::string_view s);
std::string to_string(std::span<const std::uint8_t> b);

}  // namespace icnfed::icn
