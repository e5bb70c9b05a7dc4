#include "swdft/types.hpp"

#include <string>

namespace swdft {

BudgetExceededError::BudgetExceededError(std::uint64_t required_bytes, std::uint64_t budget_bytes)
    : Error("memory budget exceeded: requires " + std::to_string(required_bytes) +
            " bytes, budget is " + std::to_string(budget_bytes) + " bytes"),
      required_(required_bytes),
      budget_(budget_bytes) {}

std::string_view to_string(Normalization mode) noexcept {
  switch (mode) {
    case Normalization::none:
      return "none";
    case Normalization::paper_1d:
      return "paper-1d";
    case Normalization::paper_2d:
      return "paper-2d";
    case Normalization::unitary:
      return "unitary";
  }
  return "unknown";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "none") return Normalization::none;
  if (text == "paper-1d") return Normalization::paper_1d;
  if (text == "paper-2d") return Normalization::paper_2d;
  if (text == "unitary") return Normalization::unitary;
  throw InvalidWindowError("unknown normalization mode '" + std::string(text) + "'");
}

Normalization normalization_from_code(std::uint8_t code) {
  if (code > static_cast<std::uint8_t>(Normalization::unitary)) {
    throw FormatError("unknown normalization code " + std::to_string(code));
  }
  return static_cast<Normalization>(code);
}

}  // namespace swdft
