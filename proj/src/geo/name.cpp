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

#include "icnfed/geo/name.hpp"

#include "icnfed/common/error.hpp"

namespace icnfed {

Name::Name(std::initializer_list<std::string> components) : components_(components) {
  for (const auto& c : components_) check_component(c);
}

Name::Name(std::vector<std::string> components) : components_(std::move(components)) {
  for (const auto& c : components_) check_component(c);
}

void Name::check_component(std::string_view c) {
  if (c.empty()) throw InvalidArgument("name component must not be empty");
  if (c.find('/') != std::string_view::npos) {
    throw InvalidArgument("name component must not contain '/': " + std::string(c));
  }
}

Name Name::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty name");
  Name out;
  std::size_t start = 0;
  while (true) {
    auto slash = text.find('/', start);
    auto part = text.substr(start, slash == std::string_view::npos ? std::string_view::npos
                                                                    : slash - start);
    if (part.empty()) throw ParseError("empty name segment in '" + std::string(text) + "'");
    out.components_.emplace_back(part);
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return out;
}

Name& Name::append(std::string component) {
  check_component(component);
  components_.push_back(std::move(component));
  return *this;
}

Name Name::appended(std::string component) const {
  Name copy = *this;
  copy.append(std::move(component));
  return copy;
}

Name Name::prefix(std::size_t n) const {
  Name out;
  n = std::min(n, components_.size());
  out.components_.assign(components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

bool Name::has_prefix(const Name& other) const noexcept {
  if (other.size() > size()) return false;
  for (std::size_t i = 0; i < other.size(); ++i) {
    if (components_[i] != other.components_[i]) return false;
  }
  return true;
}

std::string Name::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out.push_back('/');
    out += components_[i];
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Name& name) { return os << name.to_string(); }

std::size_t NameHash::operator()(const Name& name) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : name.components()) {
    h ^= std::hash<std::string>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

bool unreserved(unsigned char ch) {
  return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') ||
         ch == '.' || ch == '_' || ch == '~' || ch == '-';
}

int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  return -1;
}

}  // namespace

std::string escape_component(std::string_view raw) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size() * 2);
  for (unsigned char ch : raw) {
    if (unreserved(ch)) {
      out.push_back(static_cast<char>(ch));
    } else {
      out.push_back('%');
      out.push_back(kHex[ch >> 4]);
      out.push_back(kHex[ch & 0xF]);
    }
  }
  return out;
}

std::string unescape_component(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    if (escaped[i] != '%') {
      out.push_back(escaped[i]);
      continue;
    }
    if (i + 2 >= escaped.size()) throw ParseError("truncated percent escape");
    int hi = hex_value(escaped[i + 1]);
    int lo = hex_value(escaped[i + 2]);
    if (hi < 0 || lo < 0) throw ParseError("bad percent escape");
    out.push_back(static_cast<char>(hi * 16 + lo));
    i += 2;
  }
  return out;
}

}  // namespace icnfed
