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

#include "icnfed/icn/segment.hpp"

#include <charconv>

#include "icnfed/common/error.hpp"

namespace icnfed::icn {

namespace {

void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v = (v << 8) | in[i];
  return v;
}

}  // namespace

std::vector<Bytes> segment(std::span<const std::uint8_t> content, std::size_t max_payload) {
  if (max_payload <= kSegmentHeaderSize) throw InvalidArgument("segment payload too small");
  auto body = max_payload - kSegmentHeaderSize;
  auto count = static_cast<std::uint32_t>(content.empty() ? 1 : (content.size() + body - 1) / body);
  std::vector<Bytes> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    auto begin = std::min(content.size(), std::size_t{i} * body);
    auto end = std::min(content.size(), begin + body);
    Bytes seg;
    seg.reserve(kSegmentHeaderSize + end - begin);
    put_u32(seg, i);
    put_u32(seg, count);
    seg.insert(seg.end(), content.begin() + static_cast<std::ptrdiff_t>(begin),
               content.begin() + static_cast<std::ptrdiff_t>(end));
    out.push_back(std::move(seg));
  }
  return out;
}

SegmentHeader segment_header(std::span<const std::uint8_t> payload) {
  if (payload.size() < kSegmentHeaderSize) throw ParseError("segment shorter than its header");
  SegmentHeader h{get_u32(payload), get_u32(payload.subspan(4))};
  if (h.count == 0 || h.index >= h.count) throw ParseError("inconsistent segment header");
  return h;
}

Name segment_name(const Name& base, std::uint32_t index) {
  return base.appended("s" + std::to_string(index));
}

std::optional<std::uint32_t> segment_index(const Name& name) {
  if (name.empty()) return std::nullopt;
  const auto& last = name.back();
  if (last.size() < 2 || last[0] != 's') return std::nullopt;
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(last.data() + 1, last.data() + last.size(), v);
  if (ec != std::errc() || ptr != last.data() + last.size()) return std::nullopt;
  return v;
}

bool Reassembly::add(std::span<const std::uint8_t> payload) {
  auto h = segment_header(payload);
  if (count_ == 0) {
    count_ = h.count;
    parts_.resize(count_);
  } else if (h.count != count_) {
    throw ParseError("segment count mismatch");
  }
  auto& slot = parts_[h.index];
  if (!slot) {
    slot = Bytes(payload.begin() + kSegmentHeaderSize, payload.end());
    ++received_;
  }
  return complete();
}

std::vector<std::uint32_t> Reassembly::missing() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < count_; ++i)
    if (!parts_[i]) out.push_back(i);
  return out;
}

Bytes Reassembly::content() const {
  if (!complete()) throw InvalidArgument("reassembly incomplete");
  Bytes out;
  for (const auto& p : parts_) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace icnfed::icn
