#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mf {

enum class Severity { kInfo, kWarning, kError };

std::string_view to_string(Severity severity);  // "INFO", "WARNING", "ERROR"

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

bool has_errors(std::span<const Diagnostic> diagnostics);

// "SEVERITY CODE message"
std::string format_diagnostic(const Diagnostic& d);

}  // namespace mf
