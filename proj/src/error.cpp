#include "mcg/error.hpp"

#include <sstream>

namespace mcg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::UndefinedSymmetry: return "UndefinedSymmetry";
    case ErrorCode::ModelMismatch: return "ModelMismatch";
    case ErrorCode::NotAnInvolution: return "NotAnInvolution";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::WrongModel: return "WrongModel";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ModelError: return "ModelError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UndefinedName: return "UndefinedName";
    case ErrorCode::Redefinition: return "Redefinition";
    case ErrorCode::EvaluationError: return "EvaluationError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message, SourcePos pos) {
  std::ostringstream out;
  out << to_string(code);
  if (pos.line > 0) out << " at " << pos.line << ":" << pos.column;
  out << ": " << message;
  return out.str();
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, SourcePos pos)
    : std::runtime_error(format_message(code, message, pos)),
      code_(code),
      pos_(pos),
      detail_(message) {}

}  // namespace mcg
