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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace icnfed {

/// Hierarchical ICN name: an ordered list of non-empty components rendered
/// with `/` separators, e.g. `dbs#2/o/POI/17-v1`.
///
/// Components are arbitrary bytes except `/`; callers embedding free text
/// (query statements) escape it first, see escape_component().
class Name {
 public:
  Name() = default;
  Name(std::initializer_list<std::string> components);
  explicit Name(std::vector<std::string> components);

  /// Splits on `/`. Throws ParseError on an empty string or empty segment.
  static Name parse(std::string_view text);

  std::size_t size() const noexcept { return components_.size(); }
  bool empty() const noexcept { return components_.empty(); }
  const std::string& operator[](std::size_t i) const { return components_[i]; }
  const std::string& back() const { return components_.back(); }
  const std::vector<std::string>& components() const noexcept { return components_; }

  Name& append(std::string component);
  Name appended(std::string component) const;

  /// First `n` components.
  Name prefix(std::size_t n) const;

  /// True iff `other`'s components are a leading sublist of ours.
  bool has_prefix(const Name& other) const noexcept;

  std::string to_string() const;

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) {
    return a.components_ <=> b.components_;
  }

 private:
  static void check_component(std::string_view c);
  std::vector<std::string> components_;
};

std::ostream& operator<<(std::ostream& os, const Name& name);

struct NameHash {
  std::size_t operator()(const Name& name) const noexcept;
};

/// Percent-encodes everything outside [A-Za-z0-9._~-] so the result is a
/// valid, `/`-free name component. unescape_component() inverts it.
std::string escape_component(std::string_view raw);
std::string unescape_component(std::string_view escaped);

}  // namespace icnfed
