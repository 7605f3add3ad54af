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

#include "icnfed/store/query.hpp"

#include <array>
#include <charconv>
#include <vector>

#include <nlohmann/json.hpp>

#include "icnfed/common/error.hpp"

namespace icnfed::store {

using nlohmann::json;

namespace {

Rect rect_from(double x0, double y0, double x1, double y1) {
  try {
    return Rect(Point(x0, y0), Point(x1, y1));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad query area: ") + e.what());
  }
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

std::string serialize(const QueryStatement& stmt) {
  json filters = json::object();
  for (const auto& [k, v] : stmt.filters) filters[k] = v;
  json j{{"area",
          {stmt.area.min().lon(), stmt.area.min().lat(), stmt.area.max().lon(),
           stmt.area.max().lat()}},
         {"did", stmt.did},
         {"filters", std::move(filters)}};
  return j.dump();
}

QueryStatement parse_statement(std::string_view text) {
  try {
    auto j = json::parse(text);
    const auto& a = j.at("area");
    if (!a.is_array() || a.size() != 4) throw ParseError("area must have 4 numbers");
    QueryStatement stmt{j.at("did").get<std::string>(),
                        rect_from(a[0].get<double>(), a[1].get<double>(), a[2].get<double>(),
                                  a[3].get<double>()),
                        {}};
    for (const auto& [k, v] : j.at("filters").items()) stmt.filters[k] = v.get<std::string>();
    return stmt;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad query statement: ") + e.what());
  }
}

std::string_view to_string(Dialect d) { return d == Dialect::A ? "A" : "B"; }

Dialect parse_dialect(std::string_view text) {
  if (text == "A" || text == "a") return Dialect::A;
  if (text == "B" || text == "b") return Dialect::B;
  throw ParseError("unknown dialect '" + std::string(text) + "'");
}

namespace {

std::string translate_a(const QueryStatement& stmt) {
  const auto& r = stmt.area;
  json clauses = json::array();
  clauses.push_back(
      {{"geometry",
        {{"$geoIntersects",
          {{"$box", {{r.min().lon(), r.min().lat()}, {r.max().lon(), r.max().lat()}}}}}}}});
  for (const auto& [k, v] : stmt.filters) clauses.push_back({{"properties." + k, {{"$eq", v}}}});
  json doc{{"find", stmt.did}, {"filter", {{"$and", std::move(clauses)}}}};
  return doc.dump();
}

QueryStatement parse_a(std::string_view text) {
  try {
    auto doc = json::parse(text);
    const auto& clauses = doc.at("filter").at("$and");
    if (!clauses.is_array() || clauses.empty()) throw ParseError("dialect A: missing clauses");
    const auto& box = clauses[0].at("geometry").at("$geoIntersects").at("$box");
    QueryStatement stmt{doc.at("find").get<std::string>(),
                        rect_from(box.at(0).at(0).get<double>(), box.at(0).at(1).get<double>(),
                                  box.at(1).at(0).get<double>(), box.at(1).at(1).get<double>()),
                        {}};
    for (std::size_t i = 1; i < clauses.size(); ++i) {
      const auto& clause = clauses[i];
      if (clause.size() != 1) throw ParseError("dialect A: malformed filter clause");
      const auto& key = clause.begin().key();
      constexpr std::string_view kPrefix = "properties.";
      if (key.rfind(kPrefix, 0) != 0) throw ParseError("dialect A: filter key lacks prefix");
      stmt.filters[key.substr(kPrefix.size())] = clause.begin().value().at("$eq").get<std::string>();
    }
    return stmt;
  } catch (const json::exception& e) {
    throw ParseError(std::string("dialect A: ") + e.what());
  }
}

std::string quote_ident(std::string_view ident) {
  std::string out = "`";
  for (char c : ident) {
    if (c == '`') out.push_back('`');
    out.push_back(c);
  }
  out.push_back('`');
  return out;
}

std::string translate_b(const QueryStatement& stmt) {
  const auto& r = stmt.area;
  std::string out = "SELECT oname FROM " + quote_ident(stmt.did) + " WHERE BOX(" +
                    format_double(r.min().lon()) + ", " + format_double(r.min().lat()) + ", " +
                    format_double(r.max().lon()) + ", " + format_double(r.max().lat()) + ")";
  for (auto it = stmt.filters.rbegin(); it != stmt.filters.rend(); ++it) {
    out += " AND " + quote_ident(it->first) + " = " + json(it->second).dump();
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ == text_.size(); }

  bool try_literal(std::string_view lit) {
    if (text_.substr(pos_, lit.size()) != lit) return false;
    pos_ += lit.size();
    return true;
  }

  void expect(std::string_view lit) {
    if (!try_literal(lit)) fail("expected '" + std::string(lit) + "'");
  }

  std::string ident() {
    expect("`");
    std::string out;
    while (true) {
      if (done()) fail("unterminated identifier");
      char c = text_[pos_++];
      if (c == '`') {
        if (!done() && text_[pos_] == '`') {
          out.push_back('`');
          ++pos_;
          continue;
        }
        break;
      }
      out.push_back(c);
    }
    return out;
  }

  double number() {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail("expected number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  std::string string_literal() {
    if (done() || text_[pos_] != '"') fail("expected string literal");
    std::size_t end = pos_ + 1;
    while (end < text_.size() && text_[end] != '"') end += text_[end] == '\\' ? 2 : 1;
    if (end >= text_.size()) fail("unterminated string literal");
    auto literal = text_.substr(pos_, end - pos_ + 1);
    pos_ = end + 1;
    try {
      return json::parse(literal).get<std::string>();
    } catch (const json::exception&) {
      fail("bad string literal");
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("dialect B at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

QueryStatement parse_b(std::string_view text) {
  Cursor cur(text);
  cur.expect("SELECT oname FROM ");
  auto did = cur.ident();
  cur.expect(" WHERE BOX(");
  std::array<double, 4> box{};
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (i) cur.expect(", ");
    box[i] = cur.number();
  }
  cur.expect(")");
  QueryStatement stmt{did, rect_from(box[0], box[1], box[2], box[3]), {}};
  while (!cur.done()) {
    cur.expect(" AND ");
    auto key = cur.ident();
    cur.expect(" = ");
    stmt.filters[key] = cur.string_literal();
  }
  return stmt;
}

}  // namespace

std::string translate(const QueryStatement& stmt, Dialect dialect) {
  return dialect == Dialect::A ? translate_a(stmt) : translate_b(stmt);
}

QueryStatement parse_dialect_statement(std::string_view text, Dialect dialect) {
  return dialect == Dialect::A ? parse_a(text) : parse_b(text);
}

}  // namespace icnfed::store
