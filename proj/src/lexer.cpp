#include "mcg/lexer.hpp"

#include <cctype>

namespace mcg {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::vector<Token> tokenize_line(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    SourcePos pos{line_no, static_cast<int>(i) + 1};
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      if (j < line.size() && line[j] == '\'') ++j;
      out.push_back({TokenKind::Ident, std::string(line.substr(i, j - i)), pos});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({TokenKind::Int, std::string(line.substr(i, j - i)), pos});
      i = j;
      continue;
    }
    static constexpr std::string_view multi[] = {"...", "->", "==", "!=", "<=", ">="};
    bool matched = false;
    for (auto m : multi) {
      if (line.substr(i, m.size()) == m) {
        out.push_back({TokenKind::Punct, std::string(m), pos});
        i += m.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    out.push_back({TokenKind::Punct, std::string(1, c), pos});
    ++i;
  }
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens, int line_no, ErrorCode error_code)
    : tokens_(std::move(tokens)), error_code_(error_code) {
  end_.kind = TokenKind::End;
  int col = 1;
  if (!tokens_.empty()) {
    const auto& last = tokens_.back();
    col = last.pos.column + static_cast<int>(last.text.size());
  }
  end_.pos = {line_no, col};
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return index_ + ahead < tokens_.size() ? tokens_[index_ + ahead] : end_;
}

Token TokenStream::next() {
  Token t = peek();
  if (index_ < tokens_.size()) ++index_;
  return t;
}

bool TokenStream::accept(std::string_view text) {
  const Token& t = peek();
  if (t.kind != TokenKind::End && t.kind != TokenKind::Int && t.text == text) {
    ++index_;
    return true;
  }
  return false;
}

Token TokenStream::expect(std::string_view text) {
  const Token& t = peek();
  if (t.kind == TokenKind::End || t.text != text) {
    fail_at(t, "expected '" + std::string(text) + "'" +
                   (t.kind == TokenKind::End ? " before end of line" : ", found '" + t.text + "'"));
  }
  return next();
}

Token TokenStream::expect_ident() {
  const Token& t = peek();
  if (t.kind != TokenKind::Ident) {
    fail_at(t, t.kind == TokenKind::End ? "expected identifier before end of line"
                                        : "expected identifier, found '" + t.text + "'");
  }
  return next();
}

long long TokenStream::expect_int() {
  bool negative = accept("-");
  const Token& t = peek();
  if (t.kind != TokenKind::Int) fail_at(t, "expected integer");
  long long v = std::stoll(next().text);
  return negative ? -v : v;
}

void TokenStream::fail(const std::string& message) const { fail_at(peek(), message); }

void TokenStream::fail_at(const Token& tok, const std::string& message) const {
  throw Error(error_code_, message, tok.pos);
}

}  // namespace mcg
