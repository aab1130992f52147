#pragma once

#include <string>
#include <utility>

#include "unitfield/error.hpp"
#include "unitfield/poly.hpp"

namespace unitfield {

/// Element of Q(t): reduced quotient num/den with den monic.
class RatFunc {
 public:
  RatFunc() : den_(Rat(1)) {}
  RatFunc(const Rat& c) : num_(c), den_(Rat(1)) {}            // NOLINT
  RatFunc(long c) : num_(Rat(c)), den_(Rat(1)) {}              // NOLINT
  RatFunc(int c) : num_(Rat(c)), den_(Rat(1)) {}               // NOLINT
  RatFunc(Poly p) : num_(std::move(p)), den_(Rat(1)) {}        // NOLINT
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(Errc::domain, "rational function with zero denominator");
    normalize();
  }

  static RatFunc t() { return RatFunc(Poly::x()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Value of a constant function.
  Rat constant_value() const { return num_.coeff(0); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFunc derivative() const {
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  RatFunc inverse() const {
    if (is_zero()) throw Error(Errc::zero_function, "inverse of zero");
    return RatFunc(den_, num_);
  }

  /// Value at a rational point; the point must not be a pole.
  Rat eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw Error(Errc::domain, "evaluation at a pole");
    return Rat(num_.eval(x) / d);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r(a);
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
    // Cross-cancel before multiplying to keep the gcd small.
    Poly g1 = gcd(a.num_, b.den_);
    Poly g2 = gcd(b.num_, a.den_);
    RatFunc r;
    r.num_ = (a.num_ / g1) * (b.num_ / g2);
    r.den_ = (a.den_ / g2) * (b.den_ / g1);
    r.fix_lead();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly(Rat(1));
      return;
    }
    if (den_.degree() > 0 && num_.degree() > 0) {
      Poly g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    fix_lead();
  }
  void fix_lead() {
    if (den_.lead() != 1) {
      Rat inv = 1 / den_.lead();
      num_ = num_ * Poly(inv);
      den_ = den_ * Poly(inv);
    }
  }

  Poly num_;
  Poly den_;
};

inline RatFunc pow(const RatFunc& base, long e) {
  if (e < 0) return pow(base.inverse(), -e);
  return RatFunc(pow(base.num(), static_cast<unsigned>(e)), pow(base.den(), static_cast<unsigned>(e)));
}

/// Height: degree as a map to the projective line.
inline long height(const RatFunc& f) {
  if (f.is_zero()) throw Error(Errc::zero_function, "height of the zero function");
  return std::max(f.num().degree(), f.den().degree());
}

inline std::string pretty(const RatFunc& f) {
  if (f.is_polynomial()) return pretty(f.num());
  return "(" + pretty(f.num()) + ")/(" + pretty(f.den()) + ")";
}

}  // namespace unitfield
