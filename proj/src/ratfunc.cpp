#include "toda/ratfunc.hpp"

#include <algorithm>
#include <memory>
#include <ostream>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>

namespace toda {

UniPoly::UniPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly& UniPoly::operator+=(const UniPoly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& r) {
  if (r == 0) {
    c_.clear();
  } else {
    for (auto& c : c_) c *= r;
  }
  return *this;
}

UniPoly UniPoly::operator-() const {
  UniPoly out(*this);
  for (auto& c : out.c_) c = -c;
  return out;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.isZero() || b.isZero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  Rational t;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      t = a.c_[i] * b.c_[j];
      out[i + j] += t;
    }
  }
  return UniPoly(std::move(out));
}

UniPoly UniPoly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return *this * Rational(1 / c_.back());
}

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string UniPoly::toString(const char* var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    std::string term;
    if (i == 0 || mag != 1) term = toda::toString(mag);
    if (i > 0) {
      if (!term.empty()) term += "*";
      term += var;
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  if (b.isZero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) {
    q = UniPoly();
    r = a;
    return;
  }
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot(a.degree() - b.degree() + 1);
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const Rational lead = b.leading();
  Rational t;
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational f = rem[k + db] / lead;
    if (f == 0) continue;
    quot[k] = f;
    for (int j = 0; j <= db; ++j) {
      t = f * bc[j];
      rem[k + j] -= t;
    }
  }
  rem.resize(db);
  q = UniPoly(std::move(quot));
  r = UniPoly(std::move(rem));
}

UniPoly gcd(UniPoly a, UniPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  UniPoly q, r;
  while (!b.isZero()) {
    if (b.degree() == 0) return UniPoly(1);
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

UniPoly derivative(const UniPoly& p) {
  if (p.degree() < 1) return {};
  std::vector<Rational> out(p.degree());
  for (int i = 1; i <= p.degree(); ++i) out[i - 1] = p[i] * i;
  return UniPoly(std::move(out));
}

namespace {

UniPoly exactQuotient(const UniPoly& a, const UniPoly& b) {
  if (b.isOne()) return a;
  UniPoly q, r;
  divmod(a, b, q, r);
  return q;
}

// Monic polynomials that occur as denominators. Entries are never removed
// or changed, so references stay valid once handed out.
class FactorRegistry {
 public:
  static FactorRegistry& instance() {
    static FactorRegistry registry;
    return registry;
  }

  const UniPoly& get(int i) const {
    std::shared_lock lock(mutex_);
    return *polys_[i];
  }

  // Writes the monic, nonconstant `rest` as a product of registered factors,
  // registering whatever is left over.
  RatFunc::Factors absorb(UniPoly rest) {
    std::unique_lock lock(mutex_);
    RatFunc::Factors out;
    UniPoly q, r;
    for (int i = 0; i < static_cast<int>(polys_.size()) && rest.degree() > 0; ++i) {
      const UniPoly& p = *polys_[i];
      int e = 0;
      while (rest.degree() >= p.degree()) {
        divmod(rest, p, q, r);
        if (!r.isZero()) break;
        rest = std::move(q);
        ++e;
      }
      if (e > 0) out.emplace_back(i, e);
    }
    if (rest.degree() > 0) {
      out.emplace_back(static_cast<int>(polys_.size()), 1);
      polys_.push_back(std::make_unique<const UniPoly>(std::move(rest)));
    }
    return out;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::vector<std::unique_ptr<const UniPoly>> polys_;
};

const UniPoly& factor(int i) { return FactorRegistry::instance().get(i); }

UniPoly factorPower(int i, int e) {
  UniPoly out(1);
  for (int k = 0; k < e; ++k) out = out * factor(i);
  return out;
}

UniPoly expand(const RatFunc::Factors& f) {
  UniPoly out(1);
  for (const auto& [i, e] : f) out = out * factorPower(i, e);
  return out;
}

// Merges two sorted factor lists, combining exponents with `op`.
template <class Op>
RatFunc::Factors merge(const RatFunc::Factors& a, const RatFunc::Factors& b, Op op) {
  RatFunc::Factors out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, op(a[i].second, 0));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, op(0, b[j].second));
      ++j;
    } else {
      out.emplace_back(a[i].first, op(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  std::erase_if(out, [](const auto& f) { return f.second == 0; });
  return out;
}

// Π p_i^{have_i - want_i}, the factor lifting a denominator `want` to `have`.
UniPoly missing(const RatFunc::Factors& have, const RatFunc::Factors& want) {
  UniPoly out(1);
  std::size_t j = 0;
  for (const auto& [i, e] : have) {
    while (j < want.size() && want[j].first < i) ++j;
    const int w = (j < want.size() && want[j].first == i) ? want[j].second : 0;
    if (e > w) out = out * factorPower(i, e - w);
  }
  return out;
}

}  // namespace

RatFunc::RatFunc(UniPoly num, const UniPoly& den) : num_(std::move(num)) {
  if (den.isZero()) throw std::domain_error("rational function with zero denominator");
  *this /= RatFunc(den);
}

UniPoly RatFunc::den() const { return expand(den_); }

RatFunc& RatFunc::operator+=(const RatFunc& rhs) {
  if (rhs.isZero()) return *this;
  if (isZero()) return *this = rhs;
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    Factors common = merge(den_, rhs.den_, [](int x, int y) { return std::max(x, y); });
    num_ = num_ * missing(common, den_) + rhs.num_ * missing(common, rhs.den_);
    den_ = std::move(common);
  }
  if (num_.isZero()) den_.clear();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& rhs) { return *this += -rhs; }

RatFunc& RatFunc::operator*=(const RatFunc& rhs) {
  if (isZero()) return *this;
  if (rhs.isZero()) return *this = RatFunc();
  num_ = num_ * rhs.num_;
  if (!rhs.den_.empty()) den_ = merge(den_, rhs.den_, [](int x, int y) { return x + y; });
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (isZero()) throw std::domain_error("rational function division by zero");
  RatFunc out;
  const Rational lead = num_.leading();
  Factors below;
  if (num_.degree() > 0) below = FactorRegistry::instance().absorb(num_.monic());
  // Cancel shared registry factors before expanding what is left on top.
  Factors top = den_;
  for (auto& [i, e] : below) {
    for (auto& [k, f] : top) {
      if (k != i) continue;
      const int c = std::min(e, f);
      e -= c;
      f -= c;
    }
  }
  std::erase_if(below, [](const auto& f) { return f.second == 0; });
  std::erase_if(top, [](const auto& f) { return f.second == 0; });
  out.num_ = expand(top) * Rational(1 / lead);
  out.den_ = std::move(below);
  return out;
}

RatFunc& RatFunc::operator/=(const RatFunc& rhs) {
  if (rhs.isZero()) throw std::domain_error("rational function division by zero");
  if (rhs.isPolynomial() && rhs.num_.degree() == 0) {
    num_ *= Rational(1 / rhs.num_.leading());
    return *this;
  }
  return *this *= rhs.inverse();
}

RatFunc RatFunc::operator-() const {
  RatFunc out(*this);
  out.num_ = -out.num_;
  return out;
}

RatFunc& RatFunc::reduce() {
  if (num_.isZero()) {
    den_.clear();
    return *this;
  }
  UniPoly q, r;
  for (auto& [i, e] : den_) {
    const UniPoly& p = factor(i);
    while (e > 0 && num_.degree() >= p.degree()) {
      divmod(num_, p, q, r);
      if (!r.isZero()) break;
      num_ = std::move(q);
      --e;
    }
  }
  std::erase_if(den_, [](const auto& f) { return f.second == 0; });
  return *this;
}

Rational RatFunc::evaluate(const Rational& x) const {
  Rational d(1);
  for (const auto& [i, e] : den_) d *= power(factor(i).evaluate(x), e);
  if (d == 0) {
    auto [n, dd] = canonical();
    if (dd.evaluate(x) == 0) throw std::domain_error("rational function evaluated at a pole");
    return n.evaluate(x) / dd.evaluate(x);
  }
  return num_.evaluate(x) / d;
}

std::pair<UniPoly, UniPoly> RatFunc::canonical() const {
  UniPoly den = expand(den_);
  UniPoly g = gcd(num_, den);
  UniPoly n = exactQuotient(num_, g), d = exactQuotient(den, g);
  const Rational lead = d.leading();
  if (lead != 1) {
    n *= Rational(1 / lead);
    d *= Rational(1 / lead);
  }
  return {n, d};
}

std::string RatFunc::toString(const char* var) const {
  if (num_.isZero()) return "0";
  auto [n, d] = canonical();
  if (d.isOne()) return n.toString(var);
  return "(" + n.toString(var) + ")/(" + d.toString(var) + ")";
}

RatFunc derivative(const RatFunc& f) {
  if (f.isPolynomial()) return RatFunc(derivative(f.num_));
  // (n/Πp^e)' = (n'·P - n·Σ e_i p_i'·P/p_i) / (Πp^e·P) with P = Πp_i.
  UniPoly all(1);
  for (const auto& [i, e] : f.den_) all = all * factor(i);
  UniPoly sum;
  for (const auto& [i, e] : f.den_) {
    UniPoly others(1);
    for (const auto& [k, g] : f.den_) {
      if (k != i) others = others * factor(k);
    }
    sum += derivative(factor(i)) * others * Rational(e);
  }
  RatFunc out;
  out.num_ = derivative(f.num_) * all - f.num_ * sum;
  out.den_ = f.den_;
  for (auto& [i, e] : out.den_) ++e;
  if (out.num_.isZero()) out.den_.clear();
  return out.reduce();
}

std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.toString(); }
std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.toString(); }

}  // namespace toda
