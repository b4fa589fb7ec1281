#include "plectic/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace plectic {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("malformed rational literal: '" + s + "'");
  if (r.get_den() == 0)
    throw std::invalid_argument("rational with zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::invalid_argument("division by zero scalar");
  Rational n = o.norm();
  // (a+bi)/(c+di) = (a+bi)(c-di)/|c+di|^2
  Rational r = (re_ * o.re_ + im_ * o.im_) / n;
  Rational i = (im_ * o.re_ - re_ * o.im_) / n;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::invalid_argument("inverse of zero scalar");
  Rational n = norm();
  return Scalar(re_ / n, -im_ / n);
}

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (re_ != 0) out = re_.get_str();
  if (im_ != 0) {
    Rational imabs_q = im_ < 0 ? Rational(-im_) : im_;
    std::string imabs = imabs_q.get_str();
    if (im_ < 0)
      out += out.empty() ? "-" : "-";
    else if (!out.empty())
      out += "+";
    out += imabs + "*i";
  }
  return out;
}

namespace {

Scalar parse_term(const std::string& term, bool negative) {
  if (term.empty()) throw std::invalid_argument("empty scalar term");
  bool imaginary = false;
  std::string body = term;
  if (body == "i") {
    body = "1";
    imaginary = true;
  } else if (body.size() >= 2 && body.compare(body.size() - 2, 2, "*i") == 0) {
    body = body.substr(0, body.size() - 2);
    imaginary = true;
  }
  Rational r = parse_rational(body);
  if (negative) r = -r;
  return imaginary ? Scalar(Rational(0), r) : Scalar(r);
}

}  // namespace

Scalar Scalar::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  // Split into at most two signed terms at top-level '+'/'-' (a sign at
  // position 0 belongs to the first term).
  std::vector<std::pair<std::string, bool>> terms;  // (body, negative)
  std::size_t start = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    start = 1;
  }
  std::size_t pos = start;
  std::size_t term_begin = start;
  for (; pos < s.size(); ++pos) {
    if (s[pos] == '+' || s[pos] == '-') {
      terms.emplace_back(s.substr(term_begin, pos - term_begin), neg);
      neg = s[pos] == '-';
      term_begin = pos + 1;
    }
  }
  terms.emplace_back(s.substr(term_begin), neg);
  if (terms.empty() || terms.size() > 2)
    throw std::invalid_argument("malformed scalar literal: '" + s + "'");

  Scalar out;
  bool saw_re = false, saw_im = false;
  for (const auto& [body, negative] : terms) {
    Scalar t = parse_term(body, negative);
    if (t.is_real() && !body.empty() && body.back() != 'i') {
      if (saw_re) throw std::invalid_argument("duplicate real part: '" + s + "'");
      saw_re = true;
    } else {
      if (saw_im) throw std::invalid_argument("duplicate imaginary part: '" + s + "'");
      saw_im = true;
    }
    out += t;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace plectic
