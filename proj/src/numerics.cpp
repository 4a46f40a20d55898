#include "ellfactors/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace ellfactors {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::CollidingPoints: return "CollidingPoints";
    case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
    case ErrorKind::SingularMobius: return "SingularMobius";
    case ErrorKind::NotInvolution: return "NotInvolution";
    case ErrorKind::InvalidCover: return "InvalidCover";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::DependentBasis: return "DependentBasis";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::DegenerateParameter: return "DegenerateParameter";
    case ErrorKind::NoValidRoot: return "NoValidRoot";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace ellfactors

namespace ellfactors::numerics {

namespace {

Settings& mutable_settings() {
  static Settings s;
  return s;
}

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

struct PrecisionInit {
  PrecisionInit() { Real::default_precision(bits_to_digits10(Settings{}.precision_bits)); }
};
const PrecisionInit precision_init;

}  // namespace

void configure(const Settings& s) {
  if (s.precision_bits < 53) throw Error(ErrorKind::OutOfRange, "precision_bits must be >= 53");
  if (!(s.epsilon > 0.0)) throw Error(ErrorKind::OutOfRange, "epsilon must be > 0");
  mutable_settings() = s;
  Real::default_precision(bits_to_digits10(s.precision_bits));
}

const Settings& settings() { return mutable_settings(); }

Real epsilon() { return Real(mutable_settings().epsilon); }

// ---------------------------------------------------------------- ComplexValue

bool ComplexValue::is_finite() const {
  return boost::multiprecision::isfinite(re_) && boost::multiprecision::isfinite(im_);
}

ComplexValue& ComplexValue::operator+=(const ComplexValue& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ComplexValue& ComplexValue::operator-=(const ComplexValue& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ComplexValue& ComplexValue::operator*=(const ComplexValue& o) {
  Real re = re_ * o.re_ - im_ * o.im_;
  Real im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexValue& ComplexValue::operator/=(const ComplexValue& o) {
  const Real den = o.re_ * o.re_ + o.im_ * o.im_;
  if (den == 0) throw Error(ErrorKind::NonFinite, "division by zero");
  Real re = (re_ * o.re_ + im_ * o.im_) / den;
  Real im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ComplexValue I() { return ComplexValue(Real(0), Real(1)); }

Real norm(const ComplexValue& z) { return z.re() * z.re() + z.im() * z.im(); }

Real abs(const ComplexValue& z) { return boost::multiprecision::sqrt(norm(z)); }

ComplexValue conj(const ComplexValue& z) { return ComplexValue(z.re(), -z.im()); }

ComplexValue sqrt(const ComplexValue& z) {
  const Real r = abs(z);
  if (r == 0) return ComplexValue();
  Real re = boost::multiprecision::sqrt((r + z.re()) / 2);
  Real im = boost::multiprecision::sqrt((r - z.re()) / 2);
  if (z.im() < 0) im = -im;
  return ComplexValue(std::move(re), std::move(im));
}

ComplexValue pow(ComplexValue z, unsigned n) {
  ComplexValue result(1);
  while (n > 0) {
    if (n & 1U) result *= z;
    z *= z;
    n >>= 1U;
  }
  return result;
}

bool is_close(const ComplexValue& a, const ComplexValue& b, const Real& tol) {
  Real scale = 1;
  scale = std::max(scale, abs(a));
  scale = std::max(scale, abs(b));
  return abs(a - b) <= tol * scale;
}

bool is_close(const ComplexValue& a, const ComplexValue& b) { return is_close(a, b, epsilon()); }

bool is_negligible(const ComplexValue& z, const Real& scale) { return abs(z) <= epsilon() * scale; }

ComplexValue require_finite(ComplexValue z, std::string_view what) {
  if (!z.is_finite()) throw Error(ErrorKind::NonFinite, std::string(what) + " is not finite");
  return z;
}

// ----------------------------------------------------------------- SpherePoint

SpherePoint::SpherePoint(ComplexValue z) : value_(require_finite(std::move(z), "sphere point")) {}

const ComplexValue& SpherePoint::value() const {
  if (!value_) throw Error(ErrorKind::NonFinite, "value() of the point at infinity");
  return *value_;
}

bool is_close(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  return is_close(a.value(), b.value());
}

// ------------------------------------------------------------------- MobiusMap

MobiusMap::MobiusMap(ComplexValue a, ComplexValue b, ComplexValue c, ComplexValue d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (abs(a_ * d_ - b_ * c_) <= epsilon()) {
    throw Error(ErrorKind::SingularMobius, "ad - bc vanishes");
  }
}

MobiusMap MobiusMap::identity() { return MobiusMap(1, 0, 0, 1); }

SpherePoint MobiusMap::operator()(const SpherePoint& p) const {
  if (p.is_infinity()) {
    if (abs(c_) <= epsilon() * abs(a_)) return SpherePoint::infinity();
    return a_ / c_;
  }
  const ComplexValue& z = p.value();
  ComplexValue num = a_ * z + b_;
  ComplexValue den = c_ * z + d_;
  if (abs(den) <= epsilon() * abs(num)) return SpherePoint::infinity();
  return num / den;
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

MobiusMap operator*(const MobiusMap& f, const MobiusMap& g) {
  return MobiusMap(f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_,
                   f.c_ * g.a_ + f.d_ * g.c_, f.c_ * g.b_ + f.d_ * g.d_);
}

bool MobiusMap::is_identity() const {
  const Real scale = std::max(abs(a_), abs(d_));
  return is_negligible(b_, scale) && is_negligible(c_, scale) && is_negligible(a_ - d_, scale);
}

bool MobiusMap::is_involution() const { return ((*this) * (*this)).is_identity(); }

SpherePoint mobius_apply(const MobiusMap& m, const SpherePoint& p) { return m(p); }

namespace {

void require_distinct(std::initializer_list<const SpherePoint*> points) {
  for (auto i = points.begin(); i != points.end(); ++i) {
    for (auto j = std::next(i); j != points.end(); ++j) {
      if (is_close(**i, **j)) {
        throw Error(ErrorKind::CollidingPoints, "points " + format_short(**i) + " and " +
                                                    format_short(**j) + " coincide");
      }
    }
  }
}

}  // namespace

MobiusMap normalizing_map(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& p3) {
  require_distinct({&p1, &p2, &p3});
  if (p1.is_infinity()) return MobiusMap(1, -p2.value(), 0, p3.value() - p2.value());
  if (p2.is_infinity()) return MobiusMap(0, p3.value() - p1.value(), 1, -p1.value());
  if (p3.is_infinity()) return MobiusMap(1, -p2.value(), 1, -p1.value());
  const ComplexValue k = (p3.value() - p1.value()) / (p3.value() - p2.value());
  return MobiusMap(k, -(k * p2.value()), 1, -p1.value());
}

ComplexValue cross_ratio_lambda(const SpherePoint& p1, const SpherePoint& p2, const SpherePoint& p3,
                                const SpherePoint& p4) {
  require_distinct({&p1, &p2, &p3, &p4});
  SpherePoint image = normalizing_map(p1, p2, p3)(p4);
  if (image.is_infinity()) throw Error(ErrorKind::CollidingPoints, "fourth point maps to infinity");
  return image.value();
}

std::pair<ComplexValue, ComplexValue> solve_quadratic(const ComplexValue& a, const ComplexValue& b,
                                                      const ComplexValue& c) {
  if (abs(a) <= epsilon()) {
    throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient vanishes");
  }
  const ComplexValue sq = sqrt(b * b - ComplexValue(4) * a * c);
  // q = -(b + sign * sq) / 2 with the sign avoiding cancellation.
  const bool same_direction = (conj(b) * sq).re() >= 0;
  const ComplexValue q = same_direction ? -(b + sq) / ComplexValue(2) : -(b - sq) / ComplexValue(2);
  if (abs(q) == 0) return {ComplexValue(), ComplexValue()};
  const ComplexValue via_q = q / a;
  const ComplexValue via_c = c / q;
  // same_direction: q/a = (-b - sq)/2a is the "minus" root.
  return same_direction ? std::pair{via_c, via_q} : std::pair{via_q, via_c};
}

std::array<ComplexValue, 2> selection_order(const std::pair<ComplexValue, ComplexValue>& roots) {
  std::array<ComplexValue, 2> out{roots.first, roots.second};
  auto key_less = [](const ComplexValue& x, const ComplexValue& y) {
    const bool xu = x.im() >= 0;
    const bool yu = y.im() >= 0;
    if (xu != yu) return xu;
    if (x.re() != y.re()) return x.re() < y.re();
    return x.im() < y.im();
  };
  if (key_less(out[1], out[0])) std::swap(out[0], out[1]);
  return out;
}

// --------------------------------------------------------------------- parsing

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  ComplexValue parse() {
    ComplexValue v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, "cannot parse '" + std::string(text_) + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  ComplexValue expr() {
    ComplexValue v = term();
    while (true) {
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  ComplexValue term() {
    ComplexValue v = unary();
    while (true) {
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        ComplexValue d = unary();
        if (abs(d) == 0) fail("division by zero");
        v /= d;
      } else {
        break;
      }
    }
    // A trailing `i` makes the whole term imaginary, so `3/4i` is (3/4)i.
    if (accept('i')) v *= I();
    return v;
  }

  ComplexValue unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  ComplexValue primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      ComplexValue v = expr();
      if (!accept(')')) fail("expected ')'");
      return sqrt(v);
    }
    if (accept('(')) {
      ComplexValue v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (accept('i')) return I();
    return number();
  }

  ComplexValue number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail("expected a number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;
    }
    return ComplexValue(Real(std::string(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string format_real(const Real& x) {
  if (x == 0) return "0.0000000000000000e+00";
  return x.str(16, std::ios_base::scientific);
}

std::string format_real_short(const Real& x) {
  std::ostringstream os;
  os.precision(10);
  os << static_cast<long double>(x);
  return os.str();
}

}  // namespace

ComplexValue parse_complex(std::string_view text) {
  ComplexValue v = LiteralParser(text).parse();
  return require_finite(v, "literal");
}

SpherePoint parse_point(std::string_view text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (t == "inf" || t == "infinity" || t == "oo") return SpherePoint::infinity();
  return parse_complex(text);
}

std::string format(const ComplexValue& z) {
  std::string out = format_real(z.re());
  if (z.im() < 0) {
    out += "-" + format_real(-z.im());
  } else {
    out += "+" + format_real(z.im());
  }
  return out + "i";
}

std::string format(const SpherePoint& p) { return p.is_infinity() ? "inf" : format(p.value()); }

std::string format_short(const ComplexValue& z) {
  const Real scale = std::max(Real(1), abs(z));
  const Real tol = epsilon() * scale;
  const bool has_re = boost::multiprecision::abs(z.re()) > tol;
  const bool has_im = boost::multiprecision::abs(z.im()) > tol;
  if (!has_im) return has_re ? format_real_short(z.re()) : "0";
  std::string im = format_real_short(boost::multiprecision::abs(z.im())) + "i";
  if (!has_re) return z.im() < 0 ? "-" + im : im;
  return format_real_short(z.re()) + (z.im() < 0 ? "-" : "+") + im;
}

std::string format_short(const SpherePoint& p) {
  return p.is_infinity() ? "inf" : format_short(p.value());
}

std::ostream& operator<<(std::ostream& os, const ComplexValue& z) { return os << format_short(z); }

std::ostream& operator<<(std::ostream& os, const SpherePoint& p) { return os << format_short(p); }

}  // namespace ellfactors::numerics
