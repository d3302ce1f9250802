#pragma once

// Process exit codes. A negative mathematical verdict is a finding, kept
// apart from usage errors and internal failures.

namespace proflq {

enum class ExitCode : int {
  Positive = 0,
  Negative = 1,
  Usage = 2,
  Internal = 3,
};

inline ExitCode exit_code_for(bool positive) { return positive ? ExitCode::Positive : ExitCode::Negative; }

inline int to_int(ExitCode c) { return static_cast<int>(c); }

}  // namespace proflq
