// relay - iterative generation chains and drift metrics
// SPDX-License-Identifier: Apache-2.0
#include "relay/run/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "relay/core/error.hpp"
#include "relay/core/strings.hpp"

namespace relay::run {

using nlohmann::json;

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  char take() {
    const char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::parse,
                "config line " + std::to_string(line) + ": " + what);
  }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos;
  }

  void skip_comment() {
    if (!eof() && peek() == '#')
      while (!eof() && peek() != '\n') ++pos;
  }

  // whitespace, comments and newlines
  void skip_blank() {
    for (;;) {
      skip_inline_ws();
      skip_comment();
      if (!eof() && peek() == '\n') {
        take();
        continue;
      }
      if (!eof() && peek() == '\r') {
        ++pos;
        continue;
      }
      return;
    }
  }

  // end of a key/value statement: optional comment then newline or EOF
  void expect_eol() {
    skip_inline_ws();
    skip_comment();
    if (eof()) return;
    if (peek() == '\r') ++pos;
    if (eof() || peek() == '\n') {
      if (!eof()) take();
      return;
    }
    fail(std::string("unexpected character '") + peek() + "' before end of line");
  }
};

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string parse_basic_string(Cursor& cur) {
  cur.take();  // opening quote
  std::string out;
  for (;;) {
    if (cur.eof()) cur.fail("unterminated string");
    const char c = cur.take();
    if (c == '"') return out;
    if (c == '\n') cur.fail("newline inside basic string");
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (cur.eof()) cur.fail("unterminated escape");
    const char esc = cur.take();
    switch (esc) {
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case 'u': {
        if (cur.pos + 4 > cur.text.size()) cur.fail("truncated \\u escape");
        const std::string hex(cur.text.substr(cur.pos, 4));
        char* end = nullptr;
        const long cp = std::strtol(hex.c_str(), &end, 16);
        if (end != hex.c_str() + 4) cur.fail("invalid \\u escape");
        cur.pos += 4;
        out += encode_utf8(static_cast<char32_t>(cp));
        break;
      }
      default:
        cur.fail(std::string("unsupported escape \\") + esc);
    }
  }
}

std::string parse_literal_string(Cursor& cur) {
  cur.take();  // opening quote
  std::string out;
  for (;;) {
    if (cur.eof()) cur.fail("unterminated literal string");
    const char c = cur.take();
    if (c == '\'') return out;
    if (c == '\n') cur.fail("newline inside literal string");
    out.push_back(c);
  }
}

std::string parse_key(Cursor& cur) {
  if (cur.eof()) cur.fail("expected a key");
  if (cur.peek() == '"') return parse_basic_string(cur);
  if (cur.peek() == '\'') return parse_literal_string(cur);
  std::string key;
  while (!cur.eof() && is_bare_key_char(cur.peek())) key.push_back(cur.take());
  if (key.empty()) cur.fail("expected a key");
  return key;
}

json parse_value(Cursor& cur);

json parse_array(Cursor& cur) {
  cur.take();  // '['
  json arr = json::array();
  for (;;) {
    cur.skip_blank();
    if (cur.eof()) cur.fail("unterminated array");
    if (cur.peek() == ']') {
      cur.take();
      return arr;
    }
    arr.push_back(parse_value(cur));
    cur.skip_blank();
    if (cur.eof()) cur.fail("unterminated array");
    if (cur.peek() == ',') {
      cur.take();
      continue;
    }
    if (cur.peek() == ']') {
      cur.take();
      return arr;
    }
    cur.fail("expected ',' or ']' in array");
  }
}

json parse_number_or_bool(Cursor& cur) {
  std::string token;
  while (!cur.eof() && !std::isspace(static_cast<unsigned char>(cur.peek())) &&
         cur.peek() != ',' && cur.peek() != ']' && cur.peek() != '#')
    token.push_back(cur.take());
  if (token == "true") return json(true);
  if (token == "false") return json(false);
  std::string digits;
  for (char c : token)
    if (c != '_') digits.push_back(c);
  if (digits.empty()) cur.fail("expected a value");
  const bool is_float = digits.find_first_of(".eE") != std::string::npos &&
                        digits.find_first_of("0123456789") != std::string::npos;
  char* end = nullptr;
  if (is_float) {
    const double v = std::strtod(digits.c_str(), &end);
    if (end != digits.c_str() + digits.size())
      cur.fail("malformed number '" + token + "'");
    return json(v);
  }
  const long long v = std::strtoll(digits.c_str(), &end, 10);
  if (end != digits.c_str() + digits.size())
    cur.fail("malformed number '" + token + "'");
  return json(v);
}

json parse_value(Cursor& cur) {
  if (cur.eof()) cur.fail("expected a value");
  const char c = cur.peek();
  if (c == '"') return json(parse_basic_string(cur));
  if (c == '\'') return json(parse_literal_string(cur));
  if (c == '[') return parse_array(cur);
  return parse_number_or_bool(cur);
}

std::vector<std::string> parse_header_path(Cursor& cur) {
  std::vector<std::string> path;
  for (;;) {
    cur.skip_inline_ws();
    path.push_back(parse_key(cur));
    cur.skip_inline_ws();
    if (cur.eof()) cur.fail("unterminated table header");
    if (cur.peek() == '.') {
      cur.take();
      continue;
    }
    return path;
  }
}

// Walks a dotted path from the root, descending into the last element of
// any array-of-tables along the way. Creates missing objects.
json* navigate(json* node, const std::vector<std::string>& path,
               std::size_t count, Cursor& cur) {
  for (std::size_t i = 0; i < count; ++i) {
    const std::string& key = path[i];
    json& child = (*node)[key];
    if (child.is_null()) child = json::object();
    if (child.is_array()) {
      if (child.empty()) cur.fail("table path '" + key + "' is an empty array");
      node = &child.back();
    } else if (child.is_object()) {
      node = &child;
    } else {
      cur.fail("key '" + key + "' is already a value, not a table");
    }
  }
  return node;
}

}  // namespace

json parse_toml(std::string_view text) {
  Cursor cur{text};
  json root = json::object();
  json* current = &root;
  std::set<std::string> declared;

  for (;;) {
    cur.skip_blank();
    if (cur.eof()) return root;

    if (cur.peek() == '[') {
      cur.take();
      const bool array_table = !cur.eof() && cur.peek() == '[';
      if (array_table) cur.take();
      const std::vector<std::string> path = parse_header_path(cur);
      if (cur.eof() || cur.take() != ']') cur.fail("expected ']' after table header");
      if (array_table && (cur.eof() || cur.take() != ']'))
        cur.fail("expected ']]' after array-of-tables header");
      cur.expect_eol();

      std::string joined;
      for (const auto& seg : path) joined += seg + ".";

      if (array_table) {
        json* parent = navigate(&root, path, path.size() - 1, cur);
        json& arr = (*parent)[path.back()];
        if (arr.is_null()) arr = json::array();
        if (!arr.is_array())
          cur.fail("key '" + path.back() + "' is not an array of tables");
        arr.push_back(json::object());
        current = &arr.back();
      } else {
        if (!declared.insert(joined).second)
          cur.fail("table [" + joined.substr(0, joined.size() - 1) +
                   "] declared twice");
        current = navigate(&root, path, path.size(), cur);
      }
      continue;
    }

    const std::string key = parse_key(cur);
    cur.skip_inline_ws();
    if (cur.eof() || cur.take() != '=') cur.fail("expected '=' after key '" + key + "'");
    cur.skip_inline_ws();
    if (current->contains(key)) cur.fail("duplicate key '" + key + "'");
    (*current)[key] = parse_value(cur);
    cur.expect_eol();
  }
}

json parse_toml_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorKind::io, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str());
}

}  // namespace relay::run
