#include "corefeval/score.hpp"

#include "corefeval/error.hpp"

namespace corefeval {

Fraction pooled(const Fraction& a, const Fraction& b) {
  return {a.numerator + b.numerator, a.denominator + b.denominator,
          a.if_undefined};
}

Rational f_measure(const Rational& recall, const Rational& precision) {
  // Mixed rational/int comparisons recurse under C++20 rewritten operators
  // in Boost 1.74, so compare against rationals only.
  const Rational zero(0), one(1);
  auto in_unit = [&](const Rational& x) { return x >= zero && x <= one; };
  if (!in_unit(recall) || !in_unit(precision))
    throw Error(ErrorKind::DomainError,
                "f-measure inputs must lie in [0,1], got " + to_string(recall) +
                    " and " + to_string(precision));
  if (recall + precision == zero) return zero;
  return 2 * recall * precision / (recall + precision);
}

ScoreTriple make_score(Fraction recall, Fraction precision) {
  ScoreTriple s{recall, precision, 0};
  s.f = f_measure(recall.exact(), precision.exact());
  return s;
}

std::string format_fixed(const Rational& value, int decimals) {
  using wide = __int128;
  wide num = value.numerator();
  const wide den = value.denominator();
  const bool negative = num < 0;
  if (negative) num = -num;

  wide scale = 1;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  wide q = num * scale / den;
  const wide twice_rem = 2 * (num * scale % den);
  if (twice_rem > den || (twice_rem == den && q % 2 == 1)) ++q;

  const auto whole = static_cast<long long>(q / scale);
  auto frac = static_cast<long long>(q % scale);
  std::string out = (negative && q != 0 ? "-" : "") + std::to_string(whole);
  if (decimals > 0) {
    std::string digits = std::to_string(frac);
    out += "." + std::string(decimals - digits.size(), '0') + digits;
  }
  return out;
}

}  // namespace corefeval
