#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mcg/error.hpp"

namespace mcg {

enum class TokenKind { Ident, Int, Punct, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourcePos pos;
};

/// Splits one line into tokens. Identifiers may carry a trailing prime
/// (`A'`). Recognised multi-character punctuation: -> == != <= >= ...
/// A `#` starts a comment that runs to the end of the line.
std::vector<Token> tokenize_line(std::string_view line, int line_no);

/// Cursor over a tokenized line with the usual expect/accept helpers.
class TokenStream {
 public:
  TokenStream(std::vector<Token> tokens, int line_no, ErrorCode error_code);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool accept(std::string_view punct_or_word);
  Token expect(std::string_view punct_or_word);
  Token expect_ident();
  long long expect_int();
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(const Token& tok, const std::string& message) const;

  std::size_t index() const { return index_; }
  void reset(std::size_t index) { index_ = index; }

 private:
  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  Token end_;
  ErrorCode error_code_;
};

}  // namespace mcg
