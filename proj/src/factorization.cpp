#include "toda/factorization.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "toda/errors.hpp"

namespace toda {

namespace {

using Dense = LatticeMatrix;

Dense zeros(int n) { return Dense::Constant(n, n, RatFunc()); }

// Coefficient f(s) at the point s0 + offset, as a polynomial in s0.
UniPoly atPoint(const PolyCoeff& f, long offset) {
  PolyCoeff shifted = polyShift(f, offset);
  std::vector<Rational> c(std::max(shifted.sDegree() + 1, 0));
  for (const auto& [mono, v] : shifted.terms()) c[mono.s] += v;
  return UniPoly(std::move(c));
}

std::string rowTag(int row, int m) {
  const int off = row - m;
  if (off == 0) return "s0";
  return off > 0 ? "s0+" + std::to_string(off) : "s0" + std::to_string(off);
}

bool isZero(const RatFunc& x) { return x.isZero(); }

template <class S>
using Mat = std::vector<std::vector<S>>;

// In-place Doolittle: afterwards the strict lower part holds L (unit
// diagonal implied) and the rest holds R, with A = L·R.
template <class S>
void doolittle(Mat<S>& a) {
  const int n = static_cast<int>(a.size());
  for (int k = 0; k < n; ++k) {
    if (isZero(a[k][k])) {
      throw SingularMinor("leading principal minor of size " + std::to_string(k + 1) + " vanishes");
    }
    const S inv = a[k][k].inverse();
    for (int i = k + 1; i < n; ++i) {
      if (isZero(a[i][k])) continue;
      S l = a[i][k] * inv;
      l.reduce();
      a[i][k] = l;
      for (int j = k + 1; j < n; ++j) {
        if (!isZero(a[k][j])) (a[i][j] -= l * a[k][j]).reduce();
      }
    }
  }
}

// W = L⁻¹ by forward substitution on the unit lower factor stored in `a`.
template <class S>
Mat<S> invertStoredLower(const Mat<S>& a, const S& one) {
  const int n = static_cast<int>(a.size());
  Mat<S> w(n, std::vector<S>(n));
  for (int i = 0; i < n; ++i) {
    w[i][i] = one;
    for (int j = 0; j < i; ++j) {
      S acc{};
      for (int k = j; k < i; ++k) {
        if (!isZero(a[i][k]) && !isZero(w[k][j])) acc = acc + a[i][k] * w[k][j];
      }
      if (!isZero(acc)) w[i][j] = -acc.reduce();
    }
  }
  return w;
}

void checkSquare(const Dense& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("lattice matrix must be square");
}

}  // namespace

LatticeMatrix toLattice(const LambdaOp& op, int m, const LatticeSample& sample) {
  if (m < 0) throw std::invalid_argument("lattice size must be nonnegative");
  if (op.logDegree() > 0) throw std::invalid_argument("toLattice needs an operator without logΛ");
  const Band& band = op.band();
  for (int order = -2 * m; order <= 2 * m; ++order) {
    if (!band.known(order)) {
      throw BandTooNarrow("order " + std::to_string(order) + " of the " + std::to_string(2 * m + 1) +
                          "-point section is outside the trusted band " + describe(band));
    }
  }
  const int n = 2 * m + 1;
  Dense out = zeros(n);
  for (const auto& [key, c] : op.terms()) {
    const int order = key.second;
    if (std::abs(order) > 2 * m) continue;
    PolyCoeff f = specialize(c, sample.nu, sample.q);
    for (int i = 0; i < n; ++i) {
      const int j = i + order;
      if (j < 0 || j >= n) continue;
      out(i, j) = RatFunc(atPoint(f, i - m));
    }
  }
  return out;
}

LatticeMatrix shiftMatrix(int size, int n) {
  Dense out = zeros(size);
  for (int i = 0; i < size; ++i) {
    if (i + n >= 0 && i + n < size) out(i, i + n) = RatFunc(1);
  }
  return out;
}

LatticeMatrix identityMatrix(int size) { return shiftMatrix(size, 0); }

LatticeMatrix sDerivative(const LatticeMatrix& a) {
  return a.unaryExpr([](const RatFunc& f) { return derivative(f); });
}

LatticeMatrix project(const LatticeMatrix& a, Part part) {
  Dense out = a;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      const bool keep = part == Part::NonNegative ? j >= i : j < i;
      if (!keep) out(i, j) = RatFunc();
    }
  }
  return out;
}

LatticeMatrix scaled(const LatticeMatrix& a, const Rational& r) {
  const RatFunc c(r);
  return a.unaryExpr([&](const RatFunc& f) { return f * c; });
}

LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("lattice matrix shapes do not match");
  Dense out = Dense::Constant(a.rows(), b.cols(), RatFunc());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).isZero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (!b(k, j).isZero()) out(i, j) += a(i, k) * b(k, j);
      }
    }
    for (int j = 0; j < b.cols(); ++j) out(i, j).reduce();
  }
  return out;
}

LatticeMatrix invertUnitLower(const LatticeMatrix& l) {
  checkSquare(l);
  const int n = static_cast<int>(l.rows());
  Mat<RatFunc> a(n, std::vector<RatFunc>(n));
  for (int i = 0; i < n; ++i) {
    if (l(i, i) != RatFunc(1)) throw NotUnitriangular("diagonal entry is not 1");
    for (int j = 0; j < i; ++j) a[i][j] = l(i, j);
  }
  Mat<RatFunc> w = invertStoredLower(a, RatFunc(1));
  Dense out = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) out(i, j) = w[i][j];
  return out;
}

LatticeMatrix invertUpper(const LatticeMatrix& r) {
  checkSquare(r);
  const int n = static_cast<int>(r.rows());
  Dense out = zeros(n);
  std::vector<RatFunc> diag(n);
  for (int j = 0; j < n; ++j) {
    if (r(j, j).isZero()) throw SingularMinor("upper factor has a zero diagonal entry");
    diag[j] = r(j, j).inverse();
  }
  for (int j = 0; j < n; ++j) {
    out(j, j) = diag[j];
    for (int i = j - 1; i >= 0; --i) {
      RatFunc acc;
      for (int k = i + 1; k <= j; ++k) {
        if (!r(i, k).isZero() && !out(k, j).isZero()) acc += r(i, k) * out(k, j);
      }
      if (!acc.isZero()) out(i, j) = (-acc * diag[i]).reduce();
    }
  }
  return out;
}

FactorizationResult gaussFactorize(const LatticeMatrix& u, int interiorMargin) {
  checkSquare(u);
  const int n = static_cast<int>(u.rows());
  Mat<RatFunc> a(n, std::vector<RatFunc>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = u(i, j);
  doolittle(a);
  FactorizationResult f;
  f.interiorMargin = interiorMargin;
  Mat<RatFunc> w = invertStoredLower(a, RatFunc(1));
  f.w = zeros(n);
  f.wInv = zeros(n);
  f.wbarPrime = zeros(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j <= i) f.w(i, j) = w[i][j];
      if (j < i) f.wInv(i, j) = a[i][j];
      if (j >= i) f.wbarPrime(i, j) = a[i][j];
    }
    f.wInv(i, i) = RatFunc(1);
  }
  f.wbarPrimeInv = invertUpper(f.wbarPrime);
  return f;
}

FactorizationResult FactorizationResult::fromFactors(LatticeMatrix w, LatticeMatrix wbarPrime, int margin) {
  FactorizationResult f;
  f.wInv = invertUnitLower(w);
  f.wbarPrimeInv = invertUpper(wbarPrime);
  f.w = std::move(w);
  f.wbarPrime = std::move(wbarPrime);
  f.interiorMargin = margin;
  return f;
}

LaxMatrices extractLax(const FactorizationResult& f) {
  const int n = f.size();
  const Dense lambda = shiftMatrix(n, 1);
  return {multiply(multiply(f.w, lambda), f.wInv),
          multiply(multiply(f.wbarPrime, lambda), f.wbarPrimeInv)};
}

LatticeMatrix lbarPowerMinusB(const FactorizationResult& f, int b, const Rational& q) {
  const Dense core = multiply(multiply(f.wbarPrime, shiftMatrix(f.size(), -b)), f.wbarPrimeInv);
  return scaled(core, power(q, b));
}

void compareInterior(ResidualReport& r, const std::string& part, const LatticeMatrix& lhs,
                     const LatticeMatrix& rhs, int margin) {
  const int n = static_cast<int>(lhs.rows());
  const int lo = margin, hi = n - 1 - margin;
  r.parts.push_back({part, Band{lo - hi, hi - lo, true, true}, -1});
  const int m = n / 2;
  for (int i = lo; i <= hi; ++i) {
    for (int j = lo; j <= hi; ++j) {
      const RatFunc d = lhs(i, j) - rhs(i, j);
      if (d.isZero()) continue;
      r.residual.push_back({part, 0, j - i, 0, rowTag(i, m) + ": " + d.toString()});
    }
  }
}

ResidualReport verifyFactorization(const LatticeMatrix& u, const FactorizationResult& f) {
  return runCheck("factor", [&](ResidualReport& r) {
    compareInterior(r, "W U = Wbar'", multiply(f.w, u), f.wbarPrime, f.interiorMargin);
  });
}

ResidualReport verifyReduction(const FactorizationResult& f, int a, int b, const LatticeSample& sample) {
  return runCheck("reduction", [&](ResidualReport& r) {
    const int n = f.size();
    const Dense& wInv = f.wInv;
    const Dense& wbInv = f.wbarPrimeInv;
    Dense lhs = multiply(multiply(f.w, shiftMatrix(n, a)), wInv);
    Dense rhs = lbarPowerMinusB(f, b, sample.q);
    if (sample.nu != 0) {
      lhs += scaled(multiply(sDerivative(f.w), wInv), sample.nu);
      rhs += scaled(multiply(sDerivative(f.wbarPrime), wbInv), sample.nu);
    }
    compareInterior(r, sample.nu == 0 ? "L^a = Lbar^-b" : "L^a - nu log L = Lbar^-b - nu log Lbar - nu log Q",
                    lhs, rhs, f.interiorMargin);
  });
}

ReducedLax reducedLaxOperator(const FactorizationResult& f, int a, int b, const LatticeSample& sample) {
  ReducedLax out;
  out.report = runCheck("frakL", [&](ResidualReport& r) {
    const int n = f.size();
    const Dense& wInv = f.wInv;
    const Dense la = multiply(multiply(f.w, shiftMatrix(n, a)), wInv);
    const Dense ba = project(la, Part::NonNegative);
    const Dense bbar = project(lbarPowerMinusB(f, b, sample.q), Part::Negative);
    out.frakL = ba + bbar;
    Dense lhs = la;
    if (sample.nu != 0) lhs += scaled(multiply(sDerivative(f.w), wInv), sample.nu);
    compareInterior(r, "L^a + nu dW W^-1 = B_a + Bbar_b", lhs, out.frakL, f.interiorMargin);
  });
  return out;
}

LatticeMatrix flowDerivative(const LatticeMatrix& u, Direction d, int a, const Rational& q) {
  if (d.k < 1) throw std::invalid_argument("flow index must be positive");
  const int n = static_cast<int>(u.rows());
  switch (d.flow) {
    case Flow::T:
      return multiply(shiftMatrix(n, d.k), u);
    case Flow::TBar:
      return scaled(multiply(u, shiftMatrix(n, -d.k)), -power(q, d.k));
    case Flow::TTilde:
      return multiply(shiftMatrix(n, d.k * a), sDerivative(u));
  }
  return {};
}

const LatticeMatrix& JetOp::along(Direction d) const {
  for (const auto& [dir, m] : first) {
    if (dir == d) return m;
  }
  throw std::out_of_range("jet has no such direction");
}

JetPair jetFactorize(const LatticeMatrix& u, const FactorizationResult& f,
                     const std::vector<Direction>& directions, int a, const Rational& q) {
  JetPair out;
  out.w.base = f.w;
  out.wbarPrime.base = f.wbarPrime;
  for (const Direction& d : directions) {
    // W(U + εdU) = W̄' + ε(dW U + W dU) splits into dW·W⁻¹ (strictly lower)
    // and dW̄'·W̄'⁻¹ (upper), both read off from X = W·dU·W̄'⁻¹.
    const Dense x = multiply(multiply(f.w, flowDerivative(u, d, a, q)), f.wbarPrimeInv);
    out.w.first.emplace_back(d, -multiply(project(x, Part::Negative), f.w));
    out.wbarPrime.first.emplace_back(d, multiply(project(x, Part::NonNegative), f.wbarPrime));
  }
  return out;
}

ResidualReport verifySato(const LatticeMatrix& u, const FactorizationResult& f, const LatticeSample& sample) {
  return runCheck("sato", [&](ResidualReport& r) {
    const int n = f.size();
    const Direction t1{Flow::T, 1}, tb1{Flow::TBar, 1};
    const JetPair jet = jetFactorize(u, f, {t1, tb1}, 1, sample.q);
    const LaxMatrices lax = extractLax(f);
    const Dense b1 = project(lax.l, Part::NonNegative);
    const Dense bbar1 = project(lbarPowerMinusB(f, 1, sample.q), Part::Negative);
    const Dense lambda = shiftMatrix(n, 1);
    const int mg = f.interiorMargin;
    compareInterior(r, "dW/dt1 = B1 W - W L", jet.w.along(t1), multiply(b1, f.w) - multiply(f.w, lambda), mg);
    compareInterior(r, "dWbar'/dt1 = B1 Wbar'", jet.wbarPrime.along(t1), multiply(b1, f.wbarPrime), mg);
    compareInterior(r, "dW/dtbar1 = Bbar1 W", jet.w.along(tb1), multiply(bbar1, f.w), mg);
    compareInterior(r, "dWbar'/dtbar1 = Bbar1 Wbar' - Q Wbar' L^-1", jet.wbarPrime.along(tb1),
                    multiply(bbar1, f.wbarPrime) - scaled(multiply(f.wbarPrime, shiftMatrix(n, -1)), sample.q),
                    mg);
  });
}

CkParts computeCk(const FactorizationResult& f, int a, int b, int k, const Rational& q) {
  const int n = f.size();
  const Dense& wInv = f.wInv;
  const Dense& wbInv = f.wbarPrimeInv;
  CkParts c;
  c.lk = multiply(multiply(f.w, shiftMatrix(n, k * a)), wInv);
  const Dense lbar = lbarPowerMinusB(f, k * b, q);
  c.finite = -(project(multiply(c.lk, multiply(sDerivative(f.w), wInv)), Part::NonNegative) +
               project(multiply(lbar, multiply(sDerivative(f.wbarPrime), wbInv)), Part::Negative));
  c.logQ = -project(lbar, Part::Negative);
  return c;
}

ResidualReport verifyExtendedSato(const LatticeMatrix& u, const FactorizationResult& f, int a, int b, int k,
                                  const LatticeSample& sample) {
  return runCheck("extended", [&](ResidualReport& r) {
    if (sample.nu != 0) throw std::invalid_argument("extended flows are checked at nu = 0");
    const Direction tt{Flow::TTilde, k}, tka{Flow::T, k * a};
    const JetPair jet = jetFactorize(u, f, {tt, tka}, a, sample.q);
    const CkParts c = computeCk(f, a, b, k, sample.q);
    const Dense rhs = multiply(c.lk, sDerivative(f.w)) + multiply(c.finite, f.w);
    compareInterior(r, "dW/dTk = Ck W - W L^ka logL", jet.w.along(tt), rhs, f.interiorMargin);
    compareInterior(r, "log Q part", jet.w.along(tka), multiply(c.logQ, f.w), f.interiorMargin);
  });
}

LatticeMatrix intertwinerDefect(const LatticeMatrix& u, int a, int b, const Rational& q) {
  const int n = static_cast<int>(u.rows());
  return multiply(shiftMatrix(n, a), u) - scaled(multiply(u, shiftMatrix(n, -b)), power(q, b));
}

LatticeMatrix equivariantFixture(int a, int b, int m, const LatticeSample& sample,
                                 const LatticeMatrixOf<Rational>& u0) {
  if (sample.nu == 0) throw std::invalid_argument("equivariant fixture needs nu != 0");
  const int n = 2 * m + 1;
  if (u0.rows() != n || u0.cols() != n) throw std::invalid_argument("seed matrix has the wrong size");
  Dense term = u0.unaryExpr([](const Rational& x) { return RatFunc(x); });
  Dense out = term;
  // Σ (s0/ν)^k T^k(U0)/k!, finite because T is nilpotent.
  const RatFunc step = RatFunc::x() * RatFunc(1 / sample.nu);
  for (int k = 1;; ++k) {
    term = intertwinerDefect(term, a, b, sample.q);
    if (std::all_of(term.data(), term.data() + term.size(), [](const RatFunc& x) { return x.isZero(); })) break;
    const RatFunc factor = step * RatFunc(Rational(1, k));
    term = term.unaryExpr([&](const RatFunc& x) { return x * factor; });
    out += term;
  }
  return out;
}

namespace {

UniPoly scrambled(int r, int idx, int salt) {
  // Polynomial sequences give low-rank Hankel blocks, so the values are scrambled.
  const long c0 = (7L * idx * idx + 3L * idx + 5L * r + salt) % 11 + 1;
  const long c1 = (5L * idx + 2L * r + 2 + salt) % 7 + 1;
  return UniPoly(std::vector<Rational>{Rational(c0), Rational(c1)});
}

}  // namespace

LatticeMatrix hankelFixture(int a, int b, int m, const Rational& q) {
  return hankelFixture(a, b, m, q, [](int r, int idx) { return scrambled(r, idx, 0); });
}

LatticeMatrix equivariantFixture(int a, int b, int m, const LatticeSample& sample) {
  if (sample.nu == 0) throw std::invalid_argument("equivariant fixture needs nu != 0");
  const int n = 2 * m + 1;
  if (a != b) {
    // Kernel elements of T have rank about n·min(a,b)/max(a,b) here, so the
    // linear construction below is singular; fall back to the full series.
    LatticeMatrixOf<Rational> u0 = LatticeMatrixOf<Rational>::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      u0(i, i) = 1;
      if (i + 1 < n) u0(i, i + 1) = (i % 3) - 1;
      if (i > 0) u0(i, i - 1) = ((2 * i) % 5) - 2;
    }
    return equivariantFixture(a, b, m, sample, u0);
  }
  // With C in the kernel of T, T(p∘C) = Λ^aC where p = row / a, so
  // U = C1 + p∘C2 + (s0/ν)Λ^aC2 solves T(U) = ν∂U and stays linear in s0.
  auto constant = [](int salt) {
    return [salt](int r, int idx) { return UniPoly(scrambled(r, idx, salt)[0]); };
  };
  const Dense c1 = hankelFixture(a, b, m, sample.q, constant(3));
  const Dense c2 = hankelFixture(a, b, m, sample.q, constant(5));
  const RatFunc slope = RatFunc::x() * RatFunc(1 / sample.nu);
  Dense out = c1 + multiply(shiftMatrix(n, a), c2).unaryExpr([&](const RatFunc& x) { return x * slope; });
  for (int i = 0; i < n; ++i) {
    const RatFunc p(Rational(i / a));
    for (int j = 0; j < n; ++j) out(i, j) += p * c2(i, j);
  }
  return out;
}

int interiorMarginFor(const LambdaOp& op) {
  const Band& b = op.band();
  if (b.empty()) return 0;
  return std::max(0, b.high - b.low);
}

std::string describe(const LatticeMatrix& a) {
  std::ostringstream os;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) os << (j ? " | " : "") << a(i, j).toString();
    os << '\n';
  }
  return os.str();
}

}  // namespace toda
