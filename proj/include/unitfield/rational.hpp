#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

#include "unitfield/error.hpp"

namespace unitfield {

/// Exact rational number; GMP keeps it canonical (gcd 1, positive denominator).
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q", "p" or "-p/q". Whitespace is not accepted.
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(Errc::parse, "empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto slash = s.find('/');
  auto digits = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  bool ok = slash == std::string::npos ? digits(start, s.size())
                                       : digits(start, slash) && digits(slash + 1, s.size());
  if (!ok) throw Error(Errc::parse, "malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rat r;
  if (r.set_str(s, 10) != 0) throw Error(Errc::parse, "malformed rational '" + s + "'");
  if (r.get_den() == 0) throw Error(Errc::parse, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(10); }

/// n / d in canonical form; d != 0.
inline Rat make_rat(const Int& n, const Int& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

/// Exact square root in Q, if there is one.
inline std::optional<Rat> rational_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  const Int& n = q.get_num();
  const Int& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return make_rat(rn, rd);
}

}  // namespace unitfield
