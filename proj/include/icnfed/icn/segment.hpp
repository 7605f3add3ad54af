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
#include <optional>
#include <span>
#include <vector>

#include "icnfed/icn/packet.hpp"

namespace icnfed::icn {

// Segmented content: every segment payload starts with an 8-byte header,
// big-endian u32 segment index then u32 segment count, followed by the body.
// Segment n of content named `base` is named `base/s{n}`.

inline constexpr std::size_t kSegmentHeaderSize = 8;

struct SegmentHeader {
  std::uint32_t index = 0;
  std::uint32_t count = 0;
};

/// Always returns at least one segment (empty content gives one empty body).
std::vector<Bytes> segment(std::span<const std::uint8_t> content, std::size_t max_payload);

/// Throws ParseError if the payload is shorter than the header or the header
/// is inconsistent.
SegmentHeader segment_header(std::span<const std::uint8_t> payload);

Name segment_name(const Name& base, std::uint32_t index);
/// Index encoded by a trailing `s{n}` component, if any.
std::optional<std::uint32_t> segment_index(const Name& name);

/// Collects segments in any order.
class Reassembly {
 public:
  /// Returns true once every segment has arrived. Duplicates are ignored;
  /// a segment disagreeing on the count throws ParseError.
  bool add(std::span<const std::uint8_t> payload);

  bool started() const noexcept { return count_ > 0; }
  bool complete() const noexcept { return count_ > 0 && received_ == count_; }
  std::uint32_t count() const noexcept { return count_; }
  std::vector<std::uint32_t> missing() const;
  Bytes content() const;

 private:
  std::uint32_t count_ = 0;
  std::uint32_t received_ = 0;
  std::vector<std::optional<Bytes>> parts_;
};

}  // namespace icnfed::icn
