/*
 * Copyright 2026 The isproc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal hand-rolled scanner shared by the text parsers.

#ifndef ISPROC_SRC_TEXT_CURSOR_HPP_
#define ISPROC_SRC_TEXT_CURSOR_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isproc/error.hpp"

namespace isproc {

// Identifiers start with [a-z0-9:._-]; later characters may also be
// uppercase so that methods such as set:T can be written.
inline bool is_identifier_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == ':' || c == '.' || c == '_' ||
         c == '-';
}

inline bool is_identifier_char(char c) { return is_identifier_start(c) || (c >= 'A' && c <= 'Z'); }

class TextCursor {
 public:
  explicit TextCursor(std::string_view text, std::size_t line = 0) : s_(text), line_(line) {}

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char peek_at(std::size_t k) const { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; }
  void advance(std::size_t n = 1) { pos_ += n; }
  std::size_t pos() const { return pos_; }
  std::string_view rest() const { return s_.substr(std::min(pos_, s_.size())); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  /// Maximal run of identifier characters; may be empty.
  std::string identifier() {
    skip_space();
    std::size_t b = pos_;
    if (at_end() || !is_identifier_start(s_[pos_])) return {};
    while (!at_end() && is_identifier_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  /// Run of characters satisfying `pred`.
  template <typename Pred>
  std::string take_while(Pred pred) {
    std::size_t b = pos_;
    while (!at_end() && pred(s_[pos_])) ++pos_;
    return std::string(s_.substr(b, pos_ - b));
  }

  std::uint64_t natural() {
    skip_space();
    std::uint64_t v = 0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p == first) throw error("expected a natural number");
    pos_ += static_cast<std::size_t>(p - first);
    return v;
  }

  bool accept(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  bool accept(std::string_view word) {
    skip_space();
    if (rest().substr(0, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw error(std::string("expected '") + c + "'");
  }

  void expect(std::string_view word) {
    if (!accept(word)) throw error("expected '" + std::string(word) + "'");
  }

  void expect_end() {
    skip_space();
    if (!at_end()) throw error("unexpected trailing input '" + std::string(rest()) + "'");
  }

  ParseError error(const std::string& what) const {
    return ParseError(what + " at column " + std::to_string(pos_ + 1), line_);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

/// Splits on '\n', keeping empty lines so that line numbers stay aligned.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  while (b <= text.size()) {
    std::size_t e = text.find('\n', b);
    if (e == std::string_view::npos) e = text.size();
    std::string_view line = text.substr(b, e - b);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    b = e + 1;
  }
  return out;
}

/// Strips a trailing `//` comment and surrounding whitespace.
inline std::string_view strip_line(std::string_view line) {
  auto cut = line.find("//");
  if (cut != std::string_view::npos) line = line.substr(0, cut);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  return line;
}

}  // namespace isproc

#endif  // ISPROC_SRC_TEXT_CURSOR_HPP_
