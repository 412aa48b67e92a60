// Copyright 2026 The qeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEG_ERRORS_HPP_
#define QEG_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qeg {

enum class ErrorCode {
  kLengthMismatch,
  kNotNormalizable,
  kNonQubitLayout,
  kGammaOutOfRange,
  kDimensionMismatch,
  kQuditIndexOutOfRange,
  kShiftOutOfRange,
  kRepeatedQudit,
  kNotUnitary,
  kTerminalClass,
  kNotTerminal,
  kUnknownClass,
  kUnknownHistory,
  kIncompleteProfile,
  kChanceNotSupported,
  kNotABijection,
  kExplosionGuard,
  kNotARealization,
  kParamOutOfRange,
  kSyntaxError,
  kSchemaError,
  kReferenceError,
  kProfileSpecError,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  Error(ErrorCode code, const std::string& message, int line, int column)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message +
                           " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        code_(code),
        line_(line),
        column_(column) {}

  ErrorCode code() const { return code_; }
  // Source position of the offending token; 0 when not tied to a file.
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ErrorCode code_;
  int line_ = 0;
  int column_ = 0;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

[[noreturn]] inline void fail_at(ErrorCode code, const std::string& message,
                                 int line, int column) {
  throw Error(code, message, line, column);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNotNormalizable: return "NotNormalizable";
    case ErrorCode::kNonQubitLayout: return "NonQubitLayout";
    case ErrorCode::kGammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kQuditIndexOutOfRange: return "QuditIndexOutOfRange";
    case ErrorCode::kShiftOutOfRange: return "ShiftOutOfRange";
    case ErrorCode::kRepeatedQudit: return "RepeatedQudit";
    case ErrorCode::kNotUnitary: return "NotUnitary";
    case ErrorCode::kTerminalClass: return "TerminalClass";
    case ErrorCode::kNotTerminal: return "NotTerminal";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kUnknownHistory: return "UnknownHistory";
    case ErrorCode::kIncompleteProfile: return "IncompleteProfile";
    case ErrorCode::kChanceNotSupported: return "ChanceNotSupported";
    case ErrorCode::kNotABijection: return "NotABijection";
    case ErrorCode::kExplosionGuard: return "ExplosionGuard";
    case ErrorCode::kNotARealization: return "NotARealization";
    case ErrorCode::kParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kReferenceError: return "ReferenceError";
    case ErrorCode::kProfileSpecError: return "ProfileSpecError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace qeg

#endif  // QEG_ERRORS_HPP_
