#include "liehom/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace liehom {

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Rational r;
  mpq_inv(r.v_.get_mpq_t(), v_.get_mpq_t());
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const { return v_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

GaussianRational GaussianRational::inverse() const {
  const Rational n = norm2();
  if (n.is_zero()) throw std::domain_error("inverse of zero");
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (im_.is_zero() && o.im_.is_zero()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

namespace {

std::string imag_part(const Rational& im) {
  if (im == Rational(1)) return "i";
  if (im == Rational(-1)) return "-i";
  return im.str() + "i";
}

}  // namespace

std::string GaussianRational::str() const {
  if (im_.is_zero()) return re_.str();
  if (re_.is_zero()) return imag_part(im_);
  std::string out = re_.str();
  if (im_.sign() > 0) out += "+";
  return out + imag_part(im_);
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

namespace {

struct ScalarCursor {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[nodiscard]] bool done() {
    skip_ws();
    return pos >= s.size();
  }
  [[nodiscard]] char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  std::string digits() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::string(s.substr(start, pos - start));
  }
};

[[noreturn]] void bad_scalar(std::string_view text) {
  throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
}

// Unsigned rational magnitude; the leading sign is consumed by the caller.
bool read_magnitude(ScalarCursor& c, Rational& out) {
  const std::string num = c.digits();
  if (num.empty()) return false;
  mpz_class n(num);
  mpz_class d(1);
  if (c.peek() == '/') {
    ++c.pos;
    const std::string den = c.digits();
    if (den.empty()) return false;
    d = mpz_class(den);
    if (d == 0) throw std::invalid_argument("zero denominator in scalar");
  }
  out = Rational(n, d);
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  ScalarCursor c{text};
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    ++c.pos;
  }
  Rational q;
  if (!read_magnitude(c, q) || !c.done()) bad_scalar(text);
  return neg ? -q : q;
}

GaussianRational parse_gaussian(std::string_view text) {
  ScalarCursor c{text};
  // term := ["-"] (magnitude ["i"] | "i")
  auto read_term = [&](bool neg, Rational& value, bool& imaginary) {
    Rational mag(1);
    const bool had_number = std::isdigit(static_cast<unsigned char>(c.peek())) != 0;
    if (had_number && !read_magnitude(c, mag)) bad_scalar(text);
    imaginary = false;
    if (c.pos < c.s.size() && c.s[c.pos] == 'i') {
      ++c.pos;
      imaginary = true;
    } else if (!had_number) {
      bad_scalar(text);
    }
    value = neg ? -mag : mag;
  };
  bool neg = false;
  if (c.peek() == '-') {
    neg = true;
    ++c.pos;
  }
  Rational first;
  bool first_imag = false;
  read_term(neg, first, first_imag);
  if (c.done()) return first_imag ? GaussianRational(Rational(0), first) : GaussianRational(first);
  if (first_imag) bad_scalar(text);
  const char op = c.peek();
  if (op != '+' && op != '-') bad_scalar(text);
  ++c.pos;
  Rational second;
  bool second_imag = false;
  read_term(op == '-', second, second_imag);
  if (!second_imag || !c.done()) bad_scalar(text);
  return {first, second};
}

}  // namespace liehom
