#pragma once

#include "lehmer/rational.hpp"

namespace lehmer {

// pi^2 lies strictly between two consecutive continued-fraction convergents:
// 152021610095151285/15403009474054693 < pi^2 < 2751773410671233032/278812939084722155,
// an interval narrower than 3e-34.
inline const ExactRational& pi_squared_lower() {
  static const ExactRational v(BigInt("152021610095151285"), BigInt("15403009474054693"));
  return v;
}

inline const ExactRational& pi_squared_upper() {
  static const ExactRational v(BigInt("2751773410671233032"), BigInt("278812939084722155"));
  return v;
}

// Certified enclosure of c / pi^2 for c > 0.
struct RationalInterval {
  ExactRational lower;
  ExactRational upper;

  bool contains(const ExactRational& x) const { return lower <= x && x <= upper; }
  ExactRational width() const { return upper - lower; }
};

inline RationalInterval over_pi_squared(const ExactRational& c) {
  return {c / pi_squared_upper(), c / pi_squared_lower()};
}

}  // namespace lehmer
