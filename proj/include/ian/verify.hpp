#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ian/dsl.hpp"

namespace ian {

enum class CheckStatus { Pass, Fail, Diagnostic, Precondition };

struct CheckOutcome {
  std::string source;  // file name or suite name
  std::string label;   // directive or property
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  double millis = 0;
};

struct SuiteReport {
  std::vector<CheckOutcome> checks;

  bool ok() const;
  /// 0 when every check passed, otherwise 1 (diagnostic), 2 (precondition)
  /// or 3 (verification failure), the most severe present winning.
  int exit_code() const;
};

/// Runs every directive of a derivation file.
SuiteReport run_derivation(const std::string& source, std::string_view text);
/// Runs every *.iad file in dir, in name order.
SuiteReport verify_corpus(const std::string& dir);
/// Randomized properties at reduced sizes (majorant soundness, ball
/// containment, residuals, Weierstrass identities).
SuiteReport verify_property(std::uint64_t seed = 1);

/// Directory of the shipped derivation corpus (build-time default, or the
/// IAN_DERIVATIONS environment variable).
std::string default_derivations_dir();

}  // namespace ian
