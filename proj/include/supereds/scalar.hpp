#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "supereds/error.hpp"

namespace supereds {

/// Exact element of Q(i): re + im*i with rational parts.
///
/// Real scalars are the common case; the imaginary part is simply zero.
/// Whether a context admits non-real scalars is decided by the context,
/// not by the scalar.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static Scalar ratio(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q);
  }
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }
  bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }

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
    if (o.is_real() && is_real()) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw PreconditionError("division by zero scalar");
    if (o.is_real()) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Canonical text: "p/q" (or "p" when q = 1) for reals and
  /// "a+b*i" / "a-b*i" otherwise, with both parts always present.
  std::string str() const {
    std::string s = re_.get_str();
    if (is_real()) return s;
    s += sgn(im_) < 0 ? "-" : "+";
    s += mpq_class(abs(im_)).get_str();
    s += "*i";
    return s;
  }

  static Scalar parse(std::string_view text) {
    auto to_q = [&](std::string_view part) {
      if (part.empty()) throw PreconditionError("malformed scalar '" + std::string(text) + "'");
      std::string p(part);
      if (p.front() == '+') p.erase(0, 1);
      mpq_class q;
      if (q.set_str(p, 10) != 0 || q.get_den() == 0)
        throw PreconditionError("malformed scalar '" + std::string(text) + "'");
      q.canonicalize();
      return q;
    };
    if (text.size() >= 2 && text.substr(text.size() - 2) == "*i") {
      std::string_view body = text.substr(0, text.size() - 2);
      auto pos = body.find_last_of("+-");
      if (pos == 0 || pos == std::string_view::npos)
        throw PreconditionError("malformed scalar '" + std::string(text) + "'");
      return Scalar(to_q(body.substr(0, pos)), to_q(body.substr(pos)));
    }
    return Scalar(to_q(text));
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class re_;
  mpq_class im_;
};

}  // namespace supereds
