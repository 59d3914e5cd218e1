#include "iotforge/lexer.hpp"

#include <array>
#include <cctype>

namespace iotforge {

namespace {

constexpr std::array kKeywords = {
    "AVG_BY_SAMPLE", "COMPUTE",     "COUNT_BY_SAMPLE",
    "Common",        "Custom",      "SUM_BY_SAMPLE",
    "String",        "accessed",    "action",
    "actuators",     "by",          "command",
    "computationalServices",        "consume",
    "database",      "devices",     "double",
    "emit",          "event",       "eventDrivenSensors",
    "false",         "for",         "from",
    "generate",      "global",      "language",
    "location",      "long",        "notify",
    "on",            "onCondition", "period",
    "periodicSensors",              "platform",
    "protocol",      "request",     "requestBasedSensors",
    "resources",     "response",    "sample",
    "service",       "set",         "state",
    "storages",      "structs",     "tags",
    "to",            "true",        "userInteractions",
    "when",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#';
}

class Lexer {
 public:
  Lexer(std::string_view src, std::string file) : src_(src), file_(std::move(file)) {}

  LexResult run() {
    LexResult out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else if (c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (ident_start(c)) {
        out.tokens.push_back(lex_ident());
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        out.tokens.push_back(lex_number(out.diags));
      } else if (c == '"') {
        out.tokens.push_back(lex_string(out.diags));
      } else {
        Token tok = lex_punct(out.diags);
        if (tok.kind == TokenKind::Punct) out.tokens.push_back(tok);
      }
    }
    out.tokens.push_back(Token{TokenKind::EndOfFile, "", here(0), pos_});
    return out;
  }

 private:
  char peek(std::size_t n) const { return pos_ + n < src_.size() ? src_[pos_ + n] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceSpan here(int length) const { return SourceSpan{file_, line_, col_, length}; }

  Token lex_ident() {
    Token tok{TokenKind::Identifier, "", here(0), pos_};
    std::size_t start = pos_;
    while (pos_ < src_.size() && ident_cont(src_[pos_])) advance();
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.span.length = static_cast<int>(tok.text.size());
    return tok;
  }

  Token lex_number(Diagnostics& diags) {
    Token tok{TokenKind::Number, "", here(0), pos_};
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    if (pos_ < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(peek(1)))) {
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    }
    if (pos_ < src_.size() && ident_start(src_[pos_])) {
      diags.push_back(make_error("BadNumber", "number runs into identifier", here(1)));
      while (pos_ < src_.size() && ident_cont(src_[pos_])) advance();
    }
    tok.text = std::string(src_.substr(start, pos_ - start));
    tok.span.length = static_cast<int>(tok.text.size());
    return tok;
  }

  Token lex_string(Diagnostics& diags) {
    Token tok{TokenKind::String, "", here(0), pos_};
    advance();  // opening quote
    std::string value;
    while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
      char c = src_[pos_];
      if (c == '\\') {
        char esc = peek(1);
        advance();
        if (pos_ >= src_.size()) break;
        switch (esc) {
          case 'n': value.push_back('\n'); break;
          case 't': value.push_back('\t'); break;
          case '"': value.push_back('"'); break;
          case '\\': value.push_back('\\'); break;
          default:
            diags.push_back(make_error("BadEscape",
                                       std::string("unknown escape '\\") + esc + "'", here(2)));
            value.push_back(esc);
        }
        advance();
      } else {
        value.push_back(c);
        advance();
      }
    }
    if (pos_ < src_.size() && src_[pos_] == '"') {
      advance();
    } else {
      diags.push_back(make_error("UnterminatedString", "unterminated string literal", tok.span));
    }
    tok.text = std::move(value);
    tok.span.length = static_cast<int>(pos_ - tok.offset);
    return tok;
  }

  Token lex_punct(Diagnostics& diags) {
    static constexpr std::array kTwo = {"->", "<=", ">=", "==", "!=", "&&", "||"};
    Token tok{TokenKind::Punct, "", here(0), pos_};
    std::string two{src_[pos_], peek(1)};
    for (const char* p : kTwo) {
      if (two == p) {
        advance();
        advance();
        tok.text = two;
        tok.span.length = 2;
        return tok;
      }
    }
    char c = src_[pos_];
    static constexpr std::string_view kOne = "{}():;,.=+-*/<>!";
    if (kOne.find(c) != std::string_view::npos) {
      advance();
      tok.text = std::string(1, c);
      tok.span.length = 1;
      return tok;
    }
    diags.push_back(
        make_error("BadCharacter", std::string("unexpected character '") + c + "'", here(1)));
    advance();
    tok.kind = TokenKind::EndOfFile;  // sentinel: caller drops it
    return tok;
  }

  std::string_view src_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

LexResult lex(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

bool is_keyword(std::string_view text) {
  for (const char* k : kKeywords) {
    if (text == k) return true;
  }
  return false;
}

}  // namespace iotforge
