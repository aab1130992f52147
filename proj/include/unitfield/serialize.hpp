#pragma once

// JSON forms of the exact types, and the coefficient-list expression syntax
// num=[a0,a1,...];den=[b0,...].

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "unitfield/place.hpp"

namespace unitfield {

using Json = nlohmann::ordered_json;

inline Json rat_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw Error(Errc::parse, "expected a rational as string or integer, got " + j.dump());
}

inline Json poly_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(rat_json(c));
  return a;
}

inline Poly poly_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::parse, "expected a coefficient list, got " + j.dump());
  std::vector<Rat> c;
  for (const auto& e : j) c.push_back(rat_from_json(e));
  return Poly(std::move(c));
}

inline Json ratfunc_json(const RatFunc& f) {
  Json j;
  j["num"] = poly_json(f.num());
  j["den"] = poly_json(f.den());
  return j;
}

/// Parses num=[a0,...];den=[b0,...] (den optional, ascending coefficients).
inline RatFunc parse_expr(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  auto list_after = [&](const std::string& key) -> std::optional<Poly> {
    auto pos = s.find(key + "=[");
    if (pos == std::string::npos) return std::nullopt;
    if (pos != 0 && s[pos - 1] != ';') throw Error(Errc::parse, "malformed expression '" + s + "'");
    auto open = pos + key.size() + 1;
    auto close = s.find(']', open);
    if (close == std::string::npos) throw Error(Errc::parse, "unterminated list in '" + s + "'");
    std::vector<Rat> c;
    std::string body = s.substr(open + 1, close - open - 1);
    std::size_t start = 0;
    while (start <= body.size() && !body.empty()) {
      auto comma = body.find(',', start);
      std::string tok = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      c.push_back(parse_rat(tok));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return Poly(std::move(c));
  };
  auto num = list_after("num");
  if (!num) throw Error(Errc::parse, "expression needs num=[...]: '" + s + "'");
  auto den = list_after("den");
  // Reject anything besides the two lists.
  std::string rest = s;
  for (const char* key : {"num=[", "den=["}) {
    auto pos = rest.find(key);
    if (pos == std::string::npos) continue;
    auto close = rest.find(']', pos);
    rest.erase(pos, close - pos + 1);
  }
  for (char ch : rest)
    if (ch != ';') throw Error(Errc::parse, "unexpected text in expression '" + s + "'");
  if (den && den->is_zero()) throw Error(Errc::parse, "zero denominator in '" + s + "'");
  return den ? RatFunc(*num, *den) : RatFunc(*num);
}

inline std::string expr_string(const RatFunc& f) {
  auto list = [](const Poly& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) out += (i ? "," : "") + to_string(p.coeffs()[i]);
    return out + "]";
  };
  std::string num = f.num().is_zero() ? "[0]" : list(f.num());
  return "num=" + num + ";den=" + list(f.den());
}

/// Accepts {"num": [...], "den": [...]} or an expression string.
inline RatFunc ratfunc_from_json(const Json& j) {
  if (j.is_string()) return parse_expr(j.get<std::string>());
  if (!j.is_object() || !j.contains("num")) throw Error(Errc::parse, "expected a rational function, got " + j.dump());
  Poly num = poly_from_json(j.at("num"));
  Poly den = j.contains("den") ? poly_from_json(j.at("den")) : Poly(Rat(1));
  if (den.is_zero()) throw Error(Errc::parse, "zero denominator");
  return RatFunc(num, den);
}

/// "inf", or the ascending coefficients of the minimal polynomial.
inline Json place_json(const Place& v) {
  if (v.is_infinity()) return "inf";
  return poly_json(v.min_poly());
}

/// Accepts "inf", a rational a (the place t = a), or a coefficient list of a
/// monic irreducible polynomial.
inline Place place_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Place::infinity();
  if (j.is_string() || j.is_number_integer()) return Place::at(rat_from_json(j));
  if (j.is_array()) return Place::finite(poly_from_json(j));
  throw Error(Errc::parse, "expected a place, got " + j.dump());
}

inline Json sset_json(const SSet& S) {
  Json a = Json::array();
  for (const auto& v : S.places()) a.push_back(place_json(v));
  return a;
}

}  // namespace unitfield
