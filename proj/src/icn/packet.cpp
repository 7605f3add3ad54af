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

#include "icnfed/icn/packet.hpp"

#include "icnfed/common/error.hpp"

namespace icnfed::icn {

namespace {

enum Tlv : std::uint64_t {
  kInterest = 0x05,
  kData = 0x06,
  kName = 0x07,
  kComponent = 0x08,
  kNonce = 0x0A,
  kLifetime = 0x0C,
  kSignatureValue = 0x17,
  kContent = 0x15,
  kFreshness = 0x19,
  kKeyLocator = 0x1C,
};

std::size_t var_number_size(std::uint64_t v) {
  if (v < 253) return 1;
  if (v <= 0xFFFF) return 3;
  if (v <= 0xFFFFFFFF) return 5;
  return 9;
}

std::size_t nonneg_size(std::uint64_t v) {
  if (v <= 0xFF) return 1;
  if (v <= 0xFFFF) return 2;
  if (v <= 0xFFFFFFFF) return 4;
  return 8;
}

std::size_t tlv_size(std::uint64_t type, std::size_t value_len) {
  return var_number_size(type) + var_number_size(value_len) + value_len;
}

void put_be(Bytes& out, std::uint64_t v, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_var_number(Bytes& out, std::uint64_t v) {
  switch (var_number_size(v)) {
    case 1: out.push_back(static_cast<std::uint8_t>(v)); break;
    case 3: out.push_back(253); put_be(out, v, 2); break;
    case 5: out.push_back(254); put_be(out, v, 4); break;
    default: out.push_back(255); put_be(out, v, 8); break;
  }
}

void put_header(Bytes& out, std::uint64_t type, std::size_t len) {
  put_var_number(out, type);
  put_var_number(out, len);
}

void put_nonneg(Bytes& out, std::uint64_t type, std::uint64_t v) {
  auto w = nonneg_size(v);
  put_header(out, type, w);
  put_be(out, v, w);
}

void put_blob(Bytes& out, std::uint64_t type, std::span<const std::uint8_t> v) {
  put_header(out, type, v.size());
  out.insert(out.end(), v.begin(), v.end());
}

std::size_t name_value_size(const Name& n) {
  std::size_t s = 0;
  for (const auto& c : n.components()) s += tlv_size(kComponent, c.size());
  return s;
}

std::size_t name_size(const Name& n) { return tlv_size(kName, name_value_size(n)); }

void put_name(Bytes& out, const Name& n) {
  put_header(out, kName, name_value_size(n));
  for (const auto& c : n.components()) {
    put_header(out, kComponent, c.size());
    out.insert(out.end(), c.begin(), c.end());
  }
}

std::size_t interest_value_size(const InterestPacket& p) {
  std::size_t s = name_size(p.name) + tlv_size(kNonce, 8) +
                  tlv_size(kLifetime, nonneg_size(static_cast<std::uint64_t>(p.lifetime_ms)));
  if (p.signature) {
    s += tlv_size(kKeyLocator, name_size(p.signature->key_locator));
    s += tlv_size(kSignatureValue, p.signature->value.size());
  }
  return s;
}

std::size_t data_value_size(const DataPacket& p) {
  return name_size(p.name) +
         tlv_size(kFreshness, nonneg_size(static_cast<std::uint64_t>(p.freshness_ms))) +
         tlv_size(kContent, p.payload.size()) +
         tlv_size(kKeyLocator, name_size(p.signature.key_locator)) +
         tlv_size(kSignatureValue, p.signature.value.size());
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  bool done() const { return pos_ == in_.size(); }

  std::uint64_t peek_type() {
    auto save = pos_;
    auto t = var_number();
    pos_ = save;
    return t;
  }

  /// Reads a TLV header of the expected type and returns a reader over its value.
  Reader element(std::uint64_t type) {
    auto t = var_number();
    if (t != type) throw ParseError("unexpected TLV type " + std::to_string(t));
    auto len = var_number();
    if (len > in_.size() - pos_) throw ParseError("TLV length exceeds input");
    Reader sub(in_.subspan(pos_, len));
    pos_ += len;
    return sub;
  }

  std::span<const std::uint8_t> rest() {
    auto r = in_.subspan(pos_);
    pos_ = in_.size();
    return r;
  }

  std::uint64_t nonneg() {
    auto r = rest();
    if (r.size() != 1 && r.size() != 2 && r.size() != 4 && r.size() != 8)
      throw ParseError("bad non-negative integer width");
    std::uint64_t v = 0;
    for (auto b : r) v = (v << 8) | b;
    return v;
  }

  Name name() {
    std::vector<std::string> comps;
    while (!done()) {
      auto c = element(kComponent).rest();
      comps.emplace_back(c.begin(), c.end());
    }
    try {
      return Name(std::move(comps));
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
  }

 private:
  std::uint64_t byte() {
    if (done()) throw ParseError("truncated TLV");
    return in_[pos_++];
  }

  std::uint64_t be(std::size_t width) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v = (v << 8) | byte();
    return v;
  }

  std::uint64_t var_number() {
    auto first = byte();
    if (first < 253) return first;
    if (first == 253) return be(2);
    if (first == 254) return be(4);
    return be(8);
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

const Name& name_of(const Packet& p) {
  return std::visit([](const auto& ptr) -> const Name& { return ptr->name; }, p);
}

Bytes encode_name(const Name& n) {
  Bytes out;
  out.reserve(name_size(n));
  put_name(out, n);
  return out;
}

Bytes encode(const InterestPacket& p) {
  Bytes out;
  out.reserve(wire_size(p));
  put_header(out, kInterest, interest_value_size(p));
  put_name(out, p.name);
  put_header(out, kNonce, 8);
  put_be(out, p.nonce, 8);
  put_nonneg(out, kLifetime, static_cast<std::uint64_t>(p.lifetime_ms));
  if (p.signature) {
    put_header(out, kKeyLocator, name_size(p.signature->key_locator));
    put_name(out, p.signature->key_locator);
    put_blob(out, kSignatureValue, p.signature->value);
  }
  return out;
}

Bytes encode(const DataPacket& p) {
  Bytes out;
  out.reserve(wire_size(p));
  put_header(out, kData, data_value_size(p));
  put_name(out, p.name);
  put_nonneg(out, kFreshness, static_cast<std::uint64_t>(p.freshness_ms));
  put_blob(out, kContent, p.payload);
  put_header(out, kKeyLocator, name_size(p.signature.key_locator));
  put_name(out, p.signature.key_locator);
  put_blob(out, kSignatureValue, p.signature.value);
  return out;
}

std::size_t wire_size(const InterestPacket& p) { return tlv_size(kInterest, interest_value_size(p)); }
std::size_t wire_size(const DataPacket& p) { return tlv_size(kData, data_value_size(p)); }
std::size_t wire_size(const Packet& p) {
  return std::visit([](const auto& ptr) { return wire_size(*ptr); }, p);
}

Packet decode(std::span<const std::uint8_t> wire) {
  Reader top(wire);
  auto type = top.peek_type();
  if (type == kInterest) {
    auto r = top.element(kInterest);
    if (!top.done()) throw ParseError("trailing bytes after Interest");
    InterestPacket p;
    p.name = r.element(kName).name();
    auto nonce = r.element(kNonce).rest();
    if (nonce.size() != 8) throw ParseError("nonce must be 8 bytes");
    for (auto b : nonce) p.nonce = (p.nonce << 8) | b;
    p.lifetime_ms = static_cast<std::int64_t>(r.element(kLifetime).nonneg());
    if (!r.done()) {
      SignatureBlock sig;
      sig.key_locator = r.element(kKeyLocator).element(kName).name();
      auto v = r.element(kSignatureValue).rest();
      sig.value.assign(v.begin(), v.end());
      p.signature = std::move(sig);
    }
    if (!r.done()) throw ParseError("trailing elements in Interest");
    return std::make_shared<const InterestPacket>(std::move(p));
  }
  if (type == kData) {
    auto r = top.element(kData);
    if (!top.done()) throw ParseError("trailing bytes after Data");
    DataPacket p;
    p.name = r.element(kName).name();
    p.freshness_ms = static_cast<std::int64_t>(r.element(kFreshness).nonneg());
    auto content = r.element(kContent).rest();
    p.payload.assign(content.begin(), content.end());
    p.signature.key_locator = r.element(kKeyLocator).element(kName).name();
    auto v = r.element(kSignatureValue).rest();
    p.signature.value.assign(v.begin(), v.end());
    if (!r.done()) throw ParseError("trailing elements in Data");
    return std::make_shared<const DataPacket>(std::move(p));
  }
  throw ParseError("not an Interest or Data packet");
}

Bytes signed_portion(const DataPacket& p) {
  Bytes out;
  put_name(out, p.name);
  put_nonneg(out, kFreshness, static_cast<std::uint64_t>(p.freshness_ms));
  put_blob(out, kContent, p.payload);
  put_header(out, kKeyLocator, name_size(p.signature.key_locator));
  put_name(out, p.signature.key_locator);
  return out;
}

Bytes signed_portion(const InterestPacket& p, const Name& key_locator) {
  Bytes out;
  put_name(out, p.name);
  put_header(out, kKeyLocator, name_size(key_locator));
  put_name(out, key_locator);
  return out;
}

Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
std::string to_string(std::span<const std::uint8_t> b) { return std::string(b.begin(), b.end()); }

}  // namespace icnfed::icn
