#pragma once

#include <stdexcept>
#include <string>

#include "hn/rational.hpp"

namespace hn {

struct value_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Which exact number field a host works in. Multi-filtered spaces produce
// plain rational degrees; Euclidean lattices produce -1/2*log(d) values.
enum class Scale { rational, log_rational };

// Exact degree of an arithmetic object. Closed under addition and
// subtraction within one scale; mixing scales is an error.
class ExactDegree {
 public:
  ExactDegree() : scale_(Scale::rational), q_(0) {}

  static ExactDegree rational(Rat q);
  // Value -1/2*log(d) for d > 0 (d = 1 is the zero degree).
  static ExactDegree log_rational(Rat d);
  static ExactDegree zero(Scale s);

  Scale scale() const { return scale_; }
  // The rational value (rational scale only).
  const Rat& rational_value() const;
  // The argument d of -1/2*log(d) (log scale only).
  const Rat& log_argument() const;

  ExactDegree operator+(const ExactDegree& o) const;
  ExactDegree operator-(const ExactDegree& o) const;
  bool operator==(const ExactDegree& o) const;
  bool operator!=(const ExactDegree& o) const { return !(*this == o); }
  // -1 / 0 / +1 against o; exact.
  int compare(const ExactDegree& o) const;
  bool operator<(const ExactDegree& o) const { return compare(o) < 0; }
  bool operator<=(const ExactDegree& o) const { return compare(o) <= 0; }

  bool is_zero() const;
  double to_double() const;

 private:
  ExactDegree(Scale s, Rat q) : scale_(s), q_(std::move(q)) {}
  Scale scale_;
  Rat q_;  // rational value, or the log argument d
};

// Exact slope-like values: a degree divided by a positive integer rank,
// plus the +/-infinity sentinels attached to the zero object. The log
// scale stores -log(d)/(2n); this representation is closed under
// addition, subtraction and scaling by non-negative rationals, which is
// what polygon heights and measure integrals need. Comparison is exact:
// rational by cross-multiplication, log scale by the integer-exponent
// test d1^(n2) vs d2^(n1) with the order reversed.
class ExactSlope {
 public:
  enum class Kind { neg_inf, finite, pos_inf };

  ExactSlope() : kind_(Kind::finite), scale_(Scale::rational), q_(0), n_(1) {}

  static ExactSlope rational(Rat q);
  // -log(d)/(2n), d > 0, n >= 1.
  static ExactSlope log_scaled(Rat d, Int n);
  static ExactSlope from_degree(const ExactDegree& deg, const Int& rank);
  static ExactSlope zero(Scale s);
  static ExactSlope negative_infinity();
  static ExactSlope positive_infinity();

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  Scale scale() const;
  const Rat& rational_value() const;  // finite, rational scale
  const Rat& log_argument() const;    // finite, log scale
  const Int& log_rank() const;        // finite, log scale

  // Arithmetic is defined on finite values only; sentinels throw.
  ExactSlope operator+(const ExactSlope& o) const;
  ExactSlope operator-(const ExactSlope& o) const;
  // Scaling by a non-negative rational.
  ExactSlope scaled(const Rat& c) const;

  // Total order with -inf < finite < +inf.
  int compare(const ExactSlope& o) const;
  bool operator==(const ExactSlope& o) const { return compare(o) == 0; }
  bool operator!=(const ExactSlope& o) const { return compare(o) != 0; }
  bool operator<(const ExactSlope& o) const { return compare(o) < 0; }
  bool operator<=(const ExactSlope& o) const { return compare(o) <= 0; }
  bool operator>(const ExactSlope& o) const { return compare(o) > 0; }
  bool operator>=(const ExactSlope& o) const { return compare(o) >= 0; }

  bool is_zero() const;
  double to_double() const;
  std::string to_string() const;  // debug/report rendering

 private:
  ExactSlope(Kind k, Scale s, Rat q, Int n)
      : kind_(k), scale_(s), q_(std::move(q)), n_(std::move(n)) {}
  void reduce();

  Kind kind_;
  Scale scale_;
  Rat q_;  // rational value, or the log argument d
  Int n_;  // 1 for rational scale; the denominator rank for log scale
};

}  // namespace hn
