#include "susy/operator_kind.hpp"

#include <array>
#include <utility>

namespace susy {

namespace {
constexpr std::array<std::pair<OperatorKind, std::string_view>, 18> kNames{{
    {OperatorKind::Identity, "Identity"},
    {OperatorKind::PiPlus, "PiPlus"},
    {OperatorKind::PiMinus, "PiMinus"},
    {OperatorKind::PiTildePlus, "PiTildePlus"},
    {OperatorKind::PiTildeMinus, "PiTildeMinus"},
    {OperatorKind::QPlus, "QPlus"},
    {OperatorKind::QMinus, "QMinus"},
    {OperatorKind::QTildePlus, "QTildePlus"},
    {OperatorKind::QTildeMinus, "QTildeMinus"},
    {OperatorKind::H, "H"},
    {OperatorKind::HTilde, "HTilde"},
    {OperatorKind::Lz, "Lz"},
    {OperatorKind::Sz, "Sz"},
    {OperatorKind::Jz, "Jz"},
    {OperatorKind::BTildePlus, "BTildePlus"},
    {OperatorKind::BTildeMinus, "BTildeMinus"},
    {OperatorKind::BPlus, "BPlus"},
    {OperatorKind::BMinus, "BMinus"},
}};
}  // namespace

std::string_view to_string(OperatorKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

bool needs_aux(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::PiTildePlus:
    case OperatorKind::PiTildeMinus:
    case OperatorKind::QTildePlus:
    case OperatorKind::QTildeMinus:
    case OperatorKind::HTilde:
    case OperatorKind::BTildePlus:
    case OperatorKind::BTildeMinus:
    case OperatorKind::BPlus:
    case OperatorKind::BMinus:
      return true;
    default:
      return false;
  }
}

}  // namespace susy
