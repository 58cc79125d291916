#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace corefeval {

using Rational = boost::rational<std::int64_t>;

/// An unreduced score fraction. Numerator and denominator are kept as counted
/// so reports can print 7/14 and corpora can pool counts. When the
/// denominator is zero the score takes the `if_undefined` convention.
struct Fraction {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  Rational if_undefined{0};

  bool defined() const { return denominator != 0; }
  Rational exact() const {
    return defined() ? Rational(numerator, denominator) : if_undefined;
  }
  double value() const { return boost::rational_cast<double>(exact()); }
  std::string str() const {
    return std::to_string(numerator) + "/" + std::to_string(denominator);
  }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Sums numerators and denominators (disjoint-union pooling).
Fraction pooled(const Fraction& a, const Fraction& b);

/// Harmonic mean of recall and precision, 0 when both are 0.
/// Throws DomainError when an input lies outside [0,1].
Rational f_measure(const Rational& recall, const Rational& precision);

struct ScoreTriple {
  Fraction recall;
  Fraction precision;
  Rational f{0};

  friend bool operator==(const ScoreTriple&, const ScoreTriple&) = default;
};

ScoreTriple make_score(Fraction recall, Fraction precision);

/// Decimal rendering of an exact value, rounded half to even.
std::string format_fixed(const Rational& value, int decimals);

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace corefeval
