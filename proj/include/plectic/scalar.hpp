#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace plectic {

using Rational = mpq_class;

// Builds a canonical rational from a numerator/denominator pair.
Rational make_rational(long num, long den = 1);
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& r);

/// Element of the Gaussian rational field Q(i): re + im*i with exact
/// rational parts.  All arithmetic in the library happens here; there is
/// no floating point anywhere.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(int n) : re_(n), im_(0) {}
  Scalar(long n) : re_(n), im_(0) {}
  Scalar(Rational re) : re_(std::move(re)), im_(0) {}
  Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

  // |z|^2 = z * conj(z), a non-negative rational.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o);

  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical string form: "a/b", "c/d*i", "a/b+c/d*i", "a/b-c/d*i", "0".
  /// Integer parts omit the denominator.
  std::string to_string() const;

  /// Parses the canonical forms above; also accepts bare "i" and "-i".
  /// Throws std::invalid_argument on malformed input.
  static Scalar parse(const std::string& s);

 private:
  Rational re_, im_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace plectic
