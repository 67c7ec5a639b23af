#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcg {

enum class ErrorCode {
  InvalidLabel,
  UndefinedSymmetry,
  ModelMismatch,
  NotAnInvolution,
  OutOfWindow,
  WrongModel,
  OutOfDomain,
  ModelError,
  ParseError,
  UndefinedName,
  Redefinition,
  EvaluationError,
};

std::string_view to_string(ErrorCode code);

/// Position inside a text input (1-based line and column; 0 when unknown).
struct SourcePos {
  int line = 0;
  int column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourcePos pos = {});

  ErrorCode code() const noexcept { return code_; }
  SourcePos pos() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  SourcePos pos_;
  std::string detail_;
};

}  // namespace mcg
