#include "odx/objective.hpp"

#include "odx/error.hpp"

namespace odx {

const char* to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::kP1: return "p1";
    case Variant::kP2: return "p2";
    case Variant::kP3: return "p3";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "p1" || text == "P1") return Variant::kP1;
  if (text == "p2" || text == "P2") return Variant::kP2;
  if (text == "p3" || text == "P3") return Variant::kP3;
  throw Error(ErrorKind::kInvalidArgument,
              "unknown objective '" + std::string(text) + "' (expected p1, p2 or p3)");
}

Objective Objective::p1(Rational alpha1, Rational alpha2) {
  Objective o{Variant::kP1, std::move(alpha1), std::move(alpha2), 0};
  o.validate();
  return o;
}

Objective Objective::p2() { return Objective{}; }

Objective Objective::p3(Rational alpha1, Rational alpha2, Rational omega) {
  Objective o{Variant::kP3, std::move(alpha1), std::move(alpha2), std::move(omega)};
  o.validate();
  return o;
}

void Objective::validate() const {
  if (alpha1 < 0 || alpha2 < 0 || omega < 0) {
    throw Error(ErrorKind::kNegativeWeight, "objective parameters must be non-negative");
  }
}

}  // namespace odx
