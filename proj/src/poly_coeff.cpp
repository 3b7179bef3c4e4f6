#include "toda/poly_coeff.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <vector>

#include "toda/errors.hpp"

namespace toda {

PolyCoeff::PolyCoeff(const Rational& c) { addTerm({}, c); }
PolyCoeff::PolyCoeff(long c) { addTerm({}, Rational(c)); }

PolyCoeff PolyCoeff::monomial(const Rational& c, int sDeg, int nuDeg, int qDeg) {
  if (sDeg < 0 || nuDeg < 0) throw std::invalid_argument("negative s or nu exponent");
  PolyCoeff p;
  p.addTerm({sDeg, nuDeg, qDeg}, c);
  return p;
}

PolyCoeff PolyCoeff::H() { return s() - PolyCoeff(rational(1, 2)); }

Rational PolyCoeff::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PolyCoeff::addTerm(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool PolyCoeff::isQFree() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.q == 0; });
}
bool PolyCoeff::isNuFree() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.nu == 0; });
}
bool PolyCoeff::isSFree() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.s == 0; });
}
bool PolyCoeff::isConstant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

int PolyCoeff::sDegree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.s);
  return d;
}
int PolyCoeff::nuDegree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.nu);
  return d;
}
int PolyCoeff::minQDegree() const {
  int d = INT_MAX;
  for (const auto& [m, c] : terms_) d = std::min(d, m.q);
  return terms_.empty() ? 0 : d;
}
int PolyCoeff::maxQDegree() const {
  int d = INT_MIN;
  for (const auto& [m, c] : terms_) d = std::max(d, m.q);
  return terms_.empty() ? 0 : d;
}

PolyCoeff& PolyCoeff::operator+=(const PolyCoeff& rhs) {
  for (const auto& [m, c] : rhs.terms_) addTerm(m, c);
  return *this;
}
PolyCoeff& PolyCoeff::operator-=(const PolyCoeff& rhs) {
  for (const auto& [m, c] : rhs.terms_) addTerm(m, -c);
  return *this;
}
PolyCoeff& PolyCoeff::operator*=(const PolyCoeff& rhs) {
  *this = *this * rhs;
  return *this;
}
PolyCoeff& PolyCoeff::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}
PolyCoeff PolyCoeff::operator-() const {
  PolyCoeff out(*this);
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

PolyCoeff operator*(const PolyCoeff& a, const PolyCoeff& b) { return mulTruncated(a, b, -1); }

PolyCoeff mulTruncated(const PolyCoeff& a, const PolyCoeff& b, int nuCap) {
  PolyCoeff out;
  if (a.isZero() || b.isZero()) return out;
  Rational prod;
  for (const auto& [ma, ca] : a.terms()) {
    if (nuCap >= 0 && ma.nu > nuCap) continue;
    for (const auto& [mb, cb] : b.terms()) {
      if (nuCap >= 0 && ma.nu + mb.nu > nuCap) continue;
      prod = ca * cb;
      out.addTerm({ma.s + mb.s, ma.nu + mb.nu, ma.q + mb.q}, prod);
    }
  }
  return out;
}

PolyCoeff truncateNu(const PolyCoeff& p, int nuCap) {
  if (nuCap < 0) return p;
  PolyCoeff out;
  for (const auto& [m, c] : p.terms()) {
    if (m.nu <= nuCap) out.addTerm(m, c);
  }
  return out;
}

PolyCoeff polyShift(const PolyCoeff& p, long m) {
  if (m == 0 || p.isZero()) return p;
  PolyCoeff out;
  const Integer shift(m);
  for (const auto& [mono, c] : p.terms()) {
    // (s+m)^i = sum_r C(i,r) m^(i-r) s^r
    Integer mpow(1);
    for (int r = mono.s; r >= 0; --r) {
      Rational term = c * Rational(binomial(static_cast<unsigned>(mono.s), static_cast<unsigned>(r)) * mpow);
      out.addTerm({r, mono.nu, mono.q}, term);
      mpow *= shift;
    }
  }
  return out;
}

PolyCoeff polyDeriv(const PolyCoeff& p) {
  PolyCoeff out;
  for (const auto& [m, c] : p.terms()) {
    if (m.s == 0) continue;
    out.addTerm({m.s - 1, m.nu, m.q}, c * m.s);
  }
  return out;
}

PolyCoeff negateNu(const PolyCoeff& p) {
  PolyCoeff out;
  for (const auto& [m, c] : p.terms()) out.addTerm(m, (m.nu % 2) ? Rational(-c) : c);
  return out;
}

PolyCoeff substituteNu(const PolyCoeff& p, const Rational& nu) {
  PolyCoeff out;
  for (const auto& [m, c] : p.terms()) out.addTerm({m.s, 0, m.q}, c * power(nu, m.nu));
  return out;
}

PolyCoeff nuComponent(const PolyCoeff& p, int j) {
  PolyCoeff out;
  for (const auto& [m, c] : p.terms()) {
    if (m.nu == j) out.addTerm({m.s, 0, m.q}, c);
  }
  return out;
}

Rational evaluate(const PolyCoeff& p, const Rational& s, const Rational& nu, const Rational& q) {
  Rational acc(0);
  for (const auto& [m, c] : p.terms()) acc += c * power(s, m.s) * power(nu, m.nu) * power(q, m.q);
  return acc;
}

PolyCoeff specialize(const PolyCoeff& p, const Rational& nu, const Rational& q) {
  PolyCoeff out;
  for (const auto& [m, c] : p.terms()) out.addTerm({m.s, 0, 0}, c * power(nu, m.nu) * power(q, m.q));
  return out;
}

// ---------------------------------------------------------------------------
// Text form: `c*s^i*nu^j*Q^k` terms, sorted by (i, j, k) descending.

namespace {

std::string factorText(const char* name, int e) {
  if (e == 0) return {};
  if (e == 1) return name;
  return std::string(name) + "^" + std::to_string(e);
}

}  // namespace

std::string PolyCoeff::toString() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<std::string> factors;
    for (auto f : {factorText("s", m.s), factorText("nu", m.nu), factorText("Q", m.q)}) {
      if (!f.empty()) factors.push_back(std::move(f));
    }
    std::string body;
    for (std::size_t i = 0; i < factors.size(); ++i) body += (i ? "*" : "") + factors[i];
    Rational mag = abs(c);
    std::string term;
    if (factors.empty()) {
      term = toda::toString(mag);
    } else if (mag == 1) {
      term = body;
    } else {
      term = toda::toString(mag) + "*" + body;
    }
    if (first) {
      out = (c < 0 ? "-" : "") + term;
      first = false;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view t) : text_(t) {}

  PolyCoeff parseAll() {
    skipWs();
    if (pos_ == text_.size()) fail("empty polynomial");
    PolyCoeff acc = parseSignedTerm(true);
    while (true) {
      skipWs();
      if (pos_ == text_.size()) break;
      acc += parseSignedTerm(false);
    }
    return acc;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial parse error at " + std::to_string(pos_) + ": " + why + " in '" +
                     std::string(text_) + "'");
  }

  void skipWs() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skipWs();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  PolyCoeff parseSignedTerm(bool leading) {
    skipWs();
    Rational sign(1);
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      sign = -1;
    } else if (!leading) {
      fail("expected '+' or '-'");
    }
    PolyCoeff t = parseFactor();
    while (peek('*')) {
      ++pos_;
      t *= parseFactor();
    }
    return t * sign;
  }

  long parseInt() {
    skipWs();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    long v = std::stol(std::string(text_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  PolyCoeff parseFactor() {
    skipWs();
    if (pos_ >= text_.size()) fail("unexpected end");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      std::string den = "1";
      if (peek('/')) {
        ++pos_;
        skipWs();
        den = digits();
        if (den.empty()) fail("expected denominator");
      }
      return PolyCoeff(parseRational(num + "/" + den));
    }
    int sDeg = 0, nuDeg = 0, qDeg = 0;
    int* target = nullptr;
    if (text_.compare(pos_, 2, "nu") == 0) {
      pos_ += 2;
      target = &nuDeg;
    } else if (c == 's') {
      ++pos_;
      target = &sDeg;
    } else if (c == 'Q') {
      ++pos_;
      target = &qDeg;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    long e = 1;
    if (peek('^')) {
      ++pos_;
      e = parseInt();
    }
    if (target != &qDeg && e < 0) fail("negative exponent on s or nu");
    *target = static_cast<int>(e);
    return PolyCoeff::monomial(1, sDeg, nuDeg, qDeg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PolyCoeff PolyCoeff::parse(std::string_view text) { return Parser(text).parseAll(); }

}  // namespace toda
