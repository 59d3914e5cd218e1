#include "iotforge/diagnostics.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace iotforge {

bool has_errors(const Diagnostics& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

void sort_diagnostics(Diagnostics& diags) {
  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.span.file, a.span.line, a.span.column, a.severity, a.code) <
           std::tie(b.span.file, b.span.line, b.span.column, b.severity, b.code);
  });
}

std::string render_diagnostic(const Diagnostic& d, bool color) {
  const char* name = d.severity == Severity::Error ? "error" : "warning";
  const char* tint = d.severity == Severity::Error ? "\x1b[31m" : "\x1b[33m";

  std::ostringstream out;
  out << d.span.file << ':' << d.span.line << ':' << d.span.column << ": ";
  if (color) out << tint;
  out << name << '[' << d.code << ']';
  if (color) out << "\x1b[0m";
  out << ": " << d.message;
  return out.str();
}

std::string render_diagnostics(const Diagnostics& diags, bool color) {
  std::string out;
  for (const auto& d : diags) {
    out += render_diagnostic(d, color);
    out += '\n';
  }
  return out;
}

}  // namespace iotforge
