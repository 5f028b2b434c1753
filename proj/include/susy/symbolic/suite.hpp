#pragma once

#include <string>
#include <vector>

#include "susy/symbolic/operator_expr.hpp"

namespace susy::symbolic {

struct IdentityResult {
  std::string name;
  std::string statement;  // human-readable form of "expr = 0"
  bool passed = false;
  std::size_t surviving_terms = 0;
  std::string residual;  // printed surviving terms when nonzero
};

struct Identity {
  std::string name;
  std::string statement;
  OperatorExpr residual;
};

/// All operator identities of the nonstationary supersymmetric structure,
/// each written as an expression that must reduce to zero.
std::vector<Identity> identity_list();

/// Verifies every identity.
std::vector<IdentityResult> verify_suite();

/// One JSON object per line: {"name", "status", "surviving_terms"}.
std::string to_json_lines(const std::vector<IdentityResult>& results);
std::string to_text_report(const std::vector<IdentityResult>& results);

}  // namespace susy::symbolic
