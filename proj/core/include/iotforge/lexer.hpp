#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "iotforge/diagnostics.hpp"

namespace iotforge {

enum class TokenKind {
  Identifier,  // also keywords; parsers match on text
  Number,      // integer or decimal, text is the original spelling
  String,      // text holds the decoded value, without quotes
  Punct,       // {, }, (, ), :, ;, ,, ., =, ->, and expression operators
  EndOfFile,
};

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  std::string text;
  SourceSpan span;
  std::size_t offset = 0;  // byte offset into the source, for verbatim slices
};

struct LexResult {
  std::vector<Token> tokens;  // always ends with an EndOfFile token
  Diagnostics diags;
};

// Tokenizes one source file. `//` starts a line comment. Identifiers are
// [A-Za-z_][A-Za-z0-9_#]*. Lexing never fails hard: bad characters are
// reported and skipped so parsers always see a token stream.
LexResult lex(std::string_view source, const std::string& file);

bool is_keyword(std::string_view text);

}  // namespace iotforge
