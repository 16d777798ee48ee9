// Copyright 2026 The convsql Authors.
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

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "convsql/errors.h"
#include "convsql/sql_ast.h"

namespace convsql {
namespace {

bool IsWordStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

std::vector<Token> TokenizeSql(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const size_t start = i;
    if (IsWordStart(c)) {
      while (i < n && IsWordChar(text[i])) ++i;
      tokens.push_back({Token::Kind::kWord, std::string(text.substr(start, i - start)), start});
    } else if (IsDigit(c) || (c == '.' && i + 1 < n && IsDigit(text[i + 1]))) {
      while (i < n && IsDigit(text[i])) ++i;
      if (i + 1 < n && text[i] == '.' && IsDigit(text[i + 1])) {
        ++i;
        while (i < n && IsDigit(text[i])) ++i;
      } else if (i < n && text[i] == '.' && (i + 1 == n || !IsWordStart(text[i + 1]))) {
        ++i;  // "15." is a number
      }
      if (i < n && IsWordStart(text[i])) {
        throw LexError(start, "malformed number");
      }
      tokens.push_back({Token::Kind::kNumber, std::string(text.substr(start, i - start)), start});
    } else if (c == '\'' || c == '"') {
      ++i;
      for (;;) {
        if (i >= n) throw LexError(start, "unterminated string literal");
        if (text[i] == c) {
          if (i + 1 < n && text[i + 1] == c) {
            i += 2;  // doubled quote
            continue;
          }
          ++i;
          break;
        }
        ++i;
      }
      tokens.push_back({Token::Kind::kString, std::string(text.substr(start, i - start)), start});
    } else if (c == '`') {
      const size_t close = text.find('`', i + 1);
      if (close == std::string_view::npos || close == i + 1) {
        throw LexError(start, "unterminated quoted identifier");
      }
      tokens.push_back({Token::Kind::kWord, std::string(text.substr(i + 1, close - i - 1)), start});
      i = close + 1;
    } else {
      std::string_view two = text.substr(i, 2);
      if (two == "!=" || two == "<>" || two == "<=" || two == ">=") {
        tokens.push_back({Token::Kind::kSymbol, std::string(two), start});
        i += 2;
        continue;
      }
      switch (c) {
        case '=': case '<': case '>': case '(': case ')': case ',':
        case '.': case '*': case '+': case '-': case '/': case ';':
          tokens.push_back({Token::Kind::kSymbol, std::string(1, c), start});
          ++i;
          break;
        default:
          throw LexError(start, std::string("unexpected character '") + c + "'");
      }
    }
  }
  if (tokens.empty()) throw LexError(0, "empty input");
  return tokens;
}

std::vector<std::string> TokenTexts(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : TokenizeSql(text)) out.push_back(std::move(t.text));
  return out;
}

}  // namespace convsql
