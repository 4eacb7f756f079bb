#pragma once

#include <string>
#include <string_view>

#include "odx/rational.hpp"

namespace odx {

// P1 balances induced workload, P2 minimizes transmitted bytes, P3 blends
// the two: f_wifi + omega * f_balance.
enum class Variant { kP1, kP2, kP3 };

const char* to_string(Variant variant) noexcept;
Variant parse_variant(std::string_view text);

struct Objective {
  Variant variant = Variant::kP2;
  Rational alpha1 = 1;
  Rational alpha2 = 1;
  Rational omega = 0;

  static Objective p1(Rational alpha1, Rational alpha2);
  static Objective p2();
  static Objective p3(Rational alpha1, Rational alpha2, Rational omega);

  // Throws Error(kNegativeWeight) if any parameter is negative.
  void validate() const;
};

}  // namespace odx
