#include "iotforge/lexer.hpp"

#include <gtest/gtest.h>

namespace iotforge {
namespace {

std::vector<std::string> token_texts(const LexResult& r) {
  std::vector<std::string> out;
  for (const auto& t : r.tokens) {
    if (t.kind != TokenKind::EndOfFile) out.push_back(t.text);
  }
  return out;
}

TEST(Lexer, SplitsDeclarationIntoTokens) {
  LexResult r = lex("generate tempMeasurement: TempStruct;", "f");
  ASSERT_TRUE(r.diags.empty());
  EXPECT_EQ(token_texts(r),
            (std::vector<std::string>{"generate", "tempMeasurement", ":", "TempStruct", ";"}));
  ASSERT_EQ(r.tokens.size(), 6u);
  EXPECT_EQ(r.tokens.back().kind, TokenKind::EndOfFile);
}

TEST(Lexer, TracksLineAndColumn) {
  LexResult r = lex("a\n  bb ccc", "f");
  ASSERT_EQ(r.tokens.size(), 4u);
  EXPECT_EQ(r.tokens[0].span.line, 1);
  EXPECT_EQ(r.tokens[0].span.column, 1);
  EXPECT_EQ(r.tokens[1].span.line, 2);
  EXPECT_EQ(r.tokens[1].span.column, 3);
  EXPECT_EQ(r.tokens[1].span.length, 2);
  EXPECT_EQ(r.tokens[2].span.line, 2);
  EXPECT_EQ(r.tokens[2].span.column, 6);
}

TEST(Lexer, OffsetsAllowVerbatimSlices) {
  std::string src = "service Foo { on x -> set a = 1; }";
  LexResult r = lex(src, "f");
  const Token& open = r.tokens[2];
  ASSERT_EQ(open.text, "{");
  const Token& close = r.tokens[r.tokens.size() - 2];
  ASSERT_EQ(close.text, "}");
  EXPECT_EQ(src.substr(open.offset, close.offset + 1 - open.offset),
            "{ on x -> set a = 1; }");
}

TEST(Lexer, CommentsAndWhitespaceAreSkipped) {
  LexResult r = lex("a // the rest is ignored ; {\nb", "f");
  EXPECT_EQ(token_texts(r), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(r.diags.empty());
}

TEST(Lexer, IdentifiersMayContainHash) {
  LexResult r = lex("room#1", "f");
  ASSERT_EQ(r.tokens.size(), 2u);
  EXPECT_EQ(r.tokens[0].kind, TokenKind::Identifier);
  EXPECT_EQ(r.tokens[0].text, "room#1");
}

TEST(Lexer, NumbersKeepOriginalSpelling) {
  LexResult r = lex("12 0.5 360", "f");
  ASSERT_EQ(r.tokens.size(), 4u);
  EXPECT_EQ(r.tokens[0].text, "12");
  EXPECT_EQ(r.tokens[1].text, "0.5");
  EXPECT_EQ(r.tokens[1].kind, TokenKind::Number);
  EXPECT_EQ(r.tokens[2].text, "360");
}

TEST(Lexer, StringsDecodeEscapes) {
  LexResult r = lex(R"("a\nb\t\"q\\")", "f");
  ASSERT_TRUE(r.diags.empty());
  ASSERT_EQ(r.tokens.size(), 2u);
  EXPECT_EQ(r.tokens[0].kind, TokenKind::String);
  EXPECT_EQ(r.tokens[0].text, "a\nb\t\"q\\");
}

TEST(Lexer, TwoCharOperatorsLexAsOneToken) {
  LexResult r = lex("-> <= >= == != && ||", "f");
  EXPECT_EQ(token_texts(r),
            (std::vector<std::string>{"->", "<=", ">=", "==", "!=", "&&", "||"}));
}

TEST(Lexer, BadNumberReported) {
  LexResult r = lex("12abc", "f");
  ASSERT_EQ(r.diags.size(), 1u);
  EXPECT_EQ(r.diags[0].code, "BadNumber");
  EXPECT_EQ(r.diags[0].severity, Severity::Error);
}

TEST(Lexer, BadEscapeReportedButValueKept) {
  LexResult r = lex(R"("a\qb")", "f");
  ASSERT_EQ(r.diags.size(), 1u);
  EXPECT_EQ(r.diags[0].code, "BadEscape");
  EXPECT_EQ(r.tokens[0].text, "aqb");
}

TEST(Lexer, UnterminatedStringReported) {
  LexResult r = lex("\"abc\n", "f");
  ASSERT_EQ(r.diags.size(), 1u);
  EXPECT_EQ(r.diags[0].code, "UnterminatedString");
}

TEST(Lexer, BadCharacterSkipped) {
  LexResult r = lex("a @ b", "f");
  ASSERT_EQ(r.diags.size(), 1u);
  EXPECT_EQ(r.diags[0].code, "BadCharacter");
  EXPECT_EQ(token_texts(r), (std::vector<std::string>{"a", "b"}));
}

TEST(Lexer, KeywordSet) {
  for (const char* k : {"structs", "tags", "periodicSensors", "eventDrivenSensors",
                        "requestBasedSensors", "actuators", "storages",
                        "computationalServices", "userInteractions", "devices", "consume",
                        "generate", "COMPUTE", "AVG_BY_SAMPLE", "on", "when", "emit", "set",
                        "notify", "request", "command", "response", "state"}) {
    EXPECT_TRUE(is_keyword(k)) << k;
  }
  EXPECT_FALSE(is_keyword("tempMeasurement"));
  EXPECT_FALSE(is_keyword("Structs"));
}

TEST(Lexer, EmptyInputYieldsOnlyEof) {
  LexResult r = lex("", "f");
  ASSERT_EQ(r.tokens.size(), 1u);
  EXPECT_EQ(r.tokens[0].kind, TokenKind::EndOfFile);
}

}  // namespace
}  // namespace iotforge
