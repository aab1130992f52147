#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace unitfield {

/// Dense univariate polynomial over a field K, coefficients in ascending
/// degree with no trailing zeros. The empty sequence is the zero polynomial.
///
/// K must be default-constructible to zero, constructible from int, and
/// provide the field operations and ==.
template <class K>
class UPoly {
 public:
  using coeff_type = K;

  UPoly() = default;
  UPoly(const K& constant) {  // NOLINT: constants promote implicitly
    if (!(constant == K{})) c_.push_back(constant);
  }
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(const K& c, std::size_t k) {
    if (c == K{}) return {};
    std::vector<K> v(k + 1);
    v[k] = c;
    return UPoly(std::move(v));
  }
  static UPoly x() { return monomial(K(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const K& lead() const { return c_.back(); }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K{}; }
  const std::vector<K>& coeffs() const { return c_; }

  UPoly monic() const {
    if (is_zero()) return {};
    UPoly r(*this);
    K inv = K(1) / lead();
    for (auto& c : r.c_) c = c * inv;
    return r;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<int>(i));
    return UPoly(std::move(d));
  }

  /// Horner evaluation at a point of any ring V that K embeds into.
  template <class V>
  V eval(const V& x) const {
    V r{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + V(*it);
    return r;
  }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(const UPoly& a) {
    UPoly r(a);
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == K{}) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == K{}) c_.pop_back();
  }

  std::vector<K> c_;
};

/// Euclidean division; b must be nonzero.
template <class K>
std::pair<UPoly<K>, UPoly<K>> divmod(const UPoly<K>& a, const UPoly<K>& b) {
  if (a.degree() < b.degree()) return {UPoly<K>{}, a};
  std::vector<K> rem = a.coeffs();
  std::vector<K> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const auto& bc = b.coeffs();
  K inv = K(1) / b.lead();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    auto top = static_cast<std::size_t>(i + b.degree());
    if (rem[top] == K{}) continue;
    K q = rem[top] * inv;
    quo[static_cast<std::size_t>(i)] = q;
    for (std::size_t j = 0; j < bc.size(); ++j) rem[static_cast<std::size_t>(i) + j] = rem[static_cast<std::size_t>(i) + j] - q * bc[j];
  }
  rem.resize(static_cast<std::size_t>(b.degree()));
  return {UPoly<K>(std::move(quo)), UPoly<K>(std::move(rem))};
}

template <class K>
UPoly<K> operator/(const UPoly<K>& a, const UPoly<K>& b) {
  return divmod(a, b).first;
}
template <class K>
UPoly<K> operator%(const UPoly<K>& a, const UPoly<K>& b) {
  return divmod(a, b).second;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class K>
UPoly<K> pow(UPoly<K> base, unsigned e) {
  UPoly<K> r(K(1));
  while (e) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return r;
}

/// Determinant by cofactor expansion over a commutative ring R.
/// Only meant for the small (<= 4x4) Sylvester matrices used here.
template <class R>
R determinant(const std::vector<std::vector<R>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return R(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  R acc{};
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col] == R{}) continue;
    std::vector<std::vector<R>> minor;
    minor.reserve(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<R> row;
      row.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    R term = m[0][col] * determinant(minor);
    acc = (col % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// Sylvester matrix of p (degree m) and q (degree n) over coefficient ring R;
/// rows hold coefficients from the leading one down.
template <class R>
std::vector<std::vector<R>> sylvester_matrix(const std::vector<R>& p_ascending,
                                             const std::vector<R>& q_ascending) {
  const std::size_t m = p_ascending.size() - 1;
  const std::size_t n = q_ascending.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<R>> s(size, std::vector<R>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = p_ascending[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = q_ascending[n - k];
  return s;
}

template <class R>
R resultant(const std::vector<R>& p_ascending, const std::vector<R>& q_ascending) {
  return determinant(sylvester_matrix(p_ascending, q_ascending));
}

}  // namespace unitfield
