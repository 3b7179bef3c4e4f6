#include "toda/rational.hpp"

#include <cctype>

namespace toda {

namespace {

bool isIntegerLiteral(std::string_view t) {
  std::size_t i = 0;
  if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

}  // namespace

Rational parseRational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  if (!isIntegerLiteral(num) || !isIntegerLiteral(den) || den.front() == '-' || den.front() == '+') {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string toString(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Integer binomial(unsigned n, unsigned k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

Rational power(const Rational& r, int e) {
  if (e < 0) {
    if (r == 0) throw std::domain_error("negative power of zero");
    Rational inv = 1 / r;
    return power(inv, -e);
  }
  Rational out(1), base(r);
  unsigned k = static_cast<unsigned>(e);
  while (k) {
    if (k & 1u) out *= base;
    base *= base;
    k >>= 1u;
  }
  return out;
}

}  // namespace toda
