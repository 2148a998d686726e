#include "hn/value.hpp"

#include <cmath>
#include <cstdio>

namespace hn {

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto check_digits = [](const std::string& t, bool sign_ok) {
    if (t.empty()) return false;
    size_t i = (sign_ok && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!check_digits(num, true) || !check_digits(den, false))
    throw std::invalid_argument("malformed rational literal: " + s);
  Int n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
  r.canonicalize();
  return r;
}

Int sqrt_ceil(const Rat& q) {
  if (q < 0) throw std::invalid_argument("sqrt_ceil of negative value");
  // m = ceil(sqrt(a/b)): smallest m with m^2 * b >= a.
  Int m;
  Int a = q.get_num(), b = q.get_den();
  // Start from floor(sqrt(ceil(a/b))) and fix up.
  Int approx = (a + b - 1) / b;
  mpz_sqrt(m.get_mpz_t(), approx.get_mpz_t());
  while (m * m * b < a) ++m;
  while (m > 0 && (m - 1) * (m - 1) * b >= a) --m;
  return m;
}

double to_double(const Rat& q) { return q.get_d(); }

double log_to_double(const Rat& q) {
  if (q <= 0) throw std::invalid_argument("log of non-positive rational");
  signed long en, ed;
  const double mn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
  constexpr double ln2 = 0.6931471805599453;
  return std::log(mn) - std::log(md) + ln2 * static_cast<double>(en - ed);
}

std::string decimal_string(double x, int digits) {
  if (digits < 1) digits = 1;
  if (digits > 17) digits = 17;
  if (x == 0) x = 0;  // flush the -0 rendering
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

// ---------------------------------------------------------------------------
// ExactDegree

ExactDegree ExactDegree::rational(Rat q) {
  return ExactDegree(Scale::rational, std::move(q));
}

ExactDegree ExactDegree::log_rational(Rat d) {
  if (d <= 0) throw value_error("log-rational degree needs a positive argument");
  return ExactDegree(Scale::log_rational, std::move(d));
}

ExactDegree ExactDegree::zero(Scale s) {
  return s == Scale::rational ? rational(Rat(0)) : log_rational(Rat(1));
}

const Rat& ExactDegree::rational_value() const {
  if (scale_ != Scale::rational) throw value_error("degree is not rational-scaled");
  return q_;
}

const Rat& ExactDegree::log_argument() const {
  if (scale_ != Scale::log_rational) throw value_error("degree is not log-scaled");
  return q_;
}

ExactDegree ExactDegree::operator+(const ExactDegree& o) const {
  if (scale_ != o.scale_) throw value_error("degree scale mismatch in +");
  if (scale_ == Scale::rational) return rational(q_ + o.q_);
  return log_rational(q_ * o.q_);
}

ExactDegree ExactDegree::operator-(const ExactDegree& o) const {
  if (scale_ != o.scale_) throw value_error("degree scale mismatch in -");
  if (scale_ == Scale::rational) return rational(q_ - o.q_);
  return log_rational(q_ / o.q_);
}

bool ExactDegree::operator==(const ExactDegree& o) const {
  return scale_ == o.scale_ && q_ == o.q_;
}

int ExactDegree::compare(const ExactDegree& o) const {
  if (scale_ != o.scale_) throw value_error("degree scale mismatch in compare");
  const int c = cmp(q_, o.q_);
  // -1/2*log is strictly decreasing in its argument.
  return scale_ == Scale::rational ? c : -c;
}

bool ExactDegree::is_zero() const {
  return scale_ == Scale::rational ? q_ == 0 : q_ == 1;
}

double ExactDegree::to_double() const {
  return scale_ == Scale::rational ? hn::to_double(q_) : -0.5 * log_to_double(q_);
}

// ---------------------------------------------------------------------------
// ExactSlope

namespace {

unsigned long to_ulong_exp(const Int& n, const char* what) {
  if (n < 0 || !n.fits_ulong_p()) throw value_error(std::string("exponent out of range in ") + what);
  return n.get_ui();
}

}  // namespace

ExactSlope ExactSlope::rational(Rat q) {
  return ExactSlope(Kind::finite, Scale::rational, std::move(q), Int(1));
}

ExactSlope ExactSlope::log_scaled(Rat d, Int n) {
  if (d <= 0) throw value_error("log-scaled slope needs a positive argument");
  if (n < 1) throw value_error("log-scaled slope needs a positive rank");
  ExactSlope s(Kind::finite, Scale::log_rational, std::move(d), std::move(n));
  s.reduce();
  return s;
}

ExactSlope ExactSlope::from_degree(const ExactDegree& deg, const Int& rank) {
  if (rank < 1) throw value_error("slope needs a positive rank");
  if (deg.scale() == Scale::rational)
    return rational(deg.rational_value() / Rat(rank));
  return log_scaled(deg.log_argument(), rank);
}

ExactSlope ExactSlope::zero(Scale s) {
  return s == Scale::rational ? rational(Rat(0)) : log_scaled(Rat(1), Int(1));
}

ExactSlope ExactSlope::negative_infinity() {
  return ExactSlope(Kind::neg_inf, Scale::rational, Rat(0), Int(1));
}

ExactSlope ExactSlope::positive_infinity() {
  return ExactSlope(Kind::pos_inf, Scale::rational, Rat(0), Int(1));
}

Scale ExactSlope::scale() const {
  if (kind_ != Kind::finite) throw value_error("sentinel slope has no scale");
  return scale_;
}

const Rat& ExactSlope::rational_value() const {
  if (kind_ != Kind::finite || scale_ != Scale::rational)
    throw value_error("slope is not a finite rational");
  return q_;
}

const Rat& ExactSlope::log_argument() const {
  if (kind_ != Kind::finite || scale_ != Scale::log_rational)
    throw value_error("slope is not log-scaled");
  return q_;
}

const Int& ExactSlope::log_rank() const {
  if (kind_ != Kind::finite || scale_ != Scale::log_rational)
    throw value_error("slope is not log-scaled");
  return n_;
}

void ExactSlope::reduce() {
  if (kind_ != Kind::finite || scale_ != Scale::log_rational) return;
  if (q_ == 1) {
    n_ = 1;
    return;
  }
  // Pull out perfect roots so that scaling roundtrips cancel:
  // -log(d^k)/(2kn) == -log(d)/(2n). Small factors of n suffice here.
  for (Int m(2); m <= n_ && m <= 1024; ++m) {
    while (mpz_divisible_p(n_.get_mpz_t(), m.get_mpz_t())) {
      const unsigned long mu = to_ulong_exp(m, "reduce");
      Int rn, rd;
      const bool en = mpz_root(rn.get_mpz_t(), q_.get_num().get_mpz_t(), mu) != 0;
      const bool ed = mpz_root(rd.get_mpz_t(), q_.get_den().get_mpz_t(), mu) != 0;
      if (!en || !ed) break;
      q_ = Rat(rn, rd);
      q_.canonicalize();
      n_ /= m;
      if (q_ == 1) {
        n_ = 1;
        return;
      }
    }
  }
}

ExactSlope ExactSlope::operator+(const ExactSlope& o) const {
  if (kind_ != Kind::finite || o.kind_ != Kind::finite)
    throw value_error("arithmetic on slope sentinel");
  if (scale_ != o.scale_) throw value_error("slope scale mismatch in +");
  if (scale_ == Scale::rational) return rational(q_ + o.q_);
  // Common denominator via the lcm keeps exponents from compounding:
  // -log(d1)/(2n1) - log(d2)/(2n2) = -log(d1^(L/n1) * d2^(L/n2))/(2L).
  Int l;
  mpz_lcm(l.get_mpz_t(), n_.get_mpz_t(), o.n_.get_mpz_t());
  const Rat d = pow_rat(q_, to_ulong_exp(Int(l / n_), "+")) *
                pow_rat(o.q_, to_ulong_exp(Int(l / o.n_), "+"));
  return log_scaled(d, l);
}

ExactSlope ExactSlope::operator-(const ExactSlope& o) const {
  if (kind_ != Kind::finite || o.kind_ != Kind::finite)
    throw value_error("arithmetic on slope sentinel");
  if (scale_ != o.scale_) throw value_error("slope scale mismatch in -");
  if (scale_ == Scale::rational) return rational(q_ - o.q_);
  Int l;
  mpz_lcm(l.get_mpz_t(), n_.get_mpz_t(), o.n_.get_mpz_t());
  const Rat d = pow_rat(q_, to_ulong_exp(Int(l / n_), "-")) /
                pow_rat(o.q_, to_ulong_exp(Int(l / o.n_), "-"));
  return log_scaled(d, l);
}

ExactSlope ExactSlope::scaled(const Rat& c) const {
  if (kind_ != Kind::finite) throw value_error("arithmetic on slope sentinel");
  if (c < 0) throw value_error("slope scaling needs a non-negative factor");
  if (scale_ == Scale::rational) return rational(q_ * c);
  if (c == 0) return zero(Scale::log_rational);
  // (a/b) * (-log(d)/(2n)) = -log(d^a)/(2nb)
  const Rat d = pow_rat(q_, to_ulong_exp(Int(c.get_num()), "scaled"));
  return log_scaled(d, n_ * c.get_den());
}

int ExactSlope::compare(const ExactSlope& o) const {
  if (kind_ == Kind::neg_inf || o.kind_ == Kind::neg_inf ||
      kind_ == Kind::pos_inf || o.kind_ == Kind::pos_inf) {
    auto level = [](Kind k) { return k == Kind::neg_inf ? -1 : (k == Kind::pos_inf ? 1 : 0); };
    const int a = level(kind_), b = level(o.kind_);
    if (a != b) return a < b ? -1 : 1;
    if (a != 0) return 0;  // equal sentinels
  }
  if (scale_ != o.scale_) throw value_error("slope scale mismatch in compare");
  if (scale_ == Scale::rational) return cmp(q_, o.q_);
  // -log(d1)/(2n1) vs -log(d2)/(2n2)  <=>  d1^n2 vs d2^n1, reversed.
  const Rat lhs = pow_rat(q_, to_ulong_exp(o.n_, "compare"));
  const Rat rhs = pow_rat(o.q_, to_ulong_exp(n_, "compare"));
  return -cmp(lhs, rhs);
}

bool ExactSlope::is_zero() const {
  if (kind_ != Kind::finite) return false;
  return scale_ == Scale::rational ? q_ == 0 : q_ == 1;
}

double ExactSlope::to_double() const {
  if (kind_ == Kind::neg_inf) return -std::numeric_limits<double>::infinity();
  if (kind_ == Kind::pos_inf) return std::numeric_limits<double>::infinity();
  if (scale_ == Scale::rational) return hn::to_double(q_);
  return -log_to_double(q_) / (2.0 * hn::to_double(Rat(n_)));
}

std::string ExactSlope::to_string() const {
  if (kind_ == Kind::neg_inf) return "-inf";
  if (kind_ == Kind::pos_inf) return "+inf";
  if (scale_ == Scale::rational) return rat_to_string(q_);
  return "-log(" + rat_to_string(q_) + ")/" + Int(Int(2) * n_).get_str();
}

}  // namespace hn
