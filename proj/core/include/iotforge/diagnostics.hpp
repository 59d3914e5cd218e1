#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace iotforge {

// Position of a symbol or token inside its originating file. Lines and
// columns are 1-based; length counts bytes.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;
  int length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceSpan span;
};

using Diagnostics = std::vector<Diagnostic>;

inline Diagnostic make_error(std::string code, std::string message, SourceSpan span) {
  return {Severity::Error, std::move(code), std::move(message), std::move(span)};
}

inline Diagnostic make_warning(std::string code, std::string message, SourceSpan span) {
  return {Severity::Warning, std::move(code), std::move(message), std::move(span)};
}

bool has_errors(const Diagnostics& diags);

// Stable presentation order: (file, line, column, severity, code).
void sort_diagnostics(Diagnostics& diags);

// `file:line:col: severity[code]: message`
std::string render_diagnostic(const Diagnostic& d, bool color = false);
std::string render_diagnostics(const Diagnostics& diags, bool color = false);

}  // namespace iotforge
