#include "tropk/rational.hpp"

#include <cctype>

namespace tropk {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text, bool allow_decimal) {
  std::string s = trim(text);
  if (s.size() > 1 && s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
        den.front() == '+') {
      throw ParseError("malformed rational: '" + s + "'");
    }
    Integer d(den);
    if (d == 0) throw ParseError("zero denominator: '" + s + "'");
    Rational r{Integer(num), d};
    r.canonicalize();
    return r;
  }
  if (is_integer_literal(s)) return Rational(Integer(s));

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (!allow_decimal) {
      throw ParseError("decimal literal '" + s + "' needs the exact-decimal opt-in");
    }
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.empty() || !is_integer_literal(whole) || !is_integer_literal(frac) ||
        frac.front() == '-' || frac.front() == '+') {
      throw ParseError("malformed decimal: '" + s + "'");
    }
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Rational r{Integer(whole) * scale + Integer(frac), scale};
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  throw ParseError("malformed rational: '" + s + "'");
}

std::string to_string(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_str();
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::int64_t to_int64(const Rational& x) {
  if (x.get_den() != 1 || !x.get_num().fits_slong_p()) {
    throw std::domain_error("not a machine integer: " + x.get_str());
  }
  return x.get_num().get_si();
}

}  // namespace tropk
