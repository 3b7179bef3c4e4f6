#pragma once

#include <Eigen/Core>

#include <vector>

#include "toda/lambda_op.hpp"
#include "toda/ratfunc.hpp"
#include "toda/residual.hpp"

namespace toda {

/// Finite section of an operator on the lattice s0 + i, i = -M..M, with s0
/// symbolic. Row/column index r corresponds to the point s0 + (r - M).
template <class Scalar>
using LatticeMatrixOf = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using LatticeMatrix = LatticeMatrixOf<RatFunc>;

/// Values substituted for ν and Q; s stays symbolic.
struct LatticeSample {
  Rational nu;
  Rational q;
};

/// Matrix of the operator on 2M+1 lattice points. Every order reaching the
/// section (|n| <= 2M) must be trusted or known to vanish.
LatticeMatrix toLattice(const LambdaOp& op, int m, const LatticeSample& sample);
/// Finite section of Λ^n.
LatticeMatrix shiftMatrix(int size, int n);
LatticeMatrix identityMatrix(int size);
/// Entrywise d/ds0.
LatticeMatrix sDerivative(const LatticeMatrix& a);
/// (A)_{>=0} keeps j >= i, (A)_{<0} keeps j < i.
LatticeMatrix project(const LatticeMatrix& a, Part part);
LatticeMatrix scaled(const LatticeMatrix& a, const Rational& r);
/// Product that skips zero entries; exact for triangular and banded inputs.
LatticeMatrix multiply(const LatticeMatrix& a, const LatticeMatrix& b);
LatticeMatrix invertUnitLower(const LatticeMatrix& l);
LatticeMatrix invertUpper(const LatticeMatrix& r);

/// W·U = W̄' with W unit lower triangular and W̄' upper triangular; the full
/// dressing operator is W̄ = W̄'·Q^H. Assertions skip `interiorMargin` rows and
/// columns at each edge.
struct FactorizationResult {
  LatticeMatrix w;
  LatticeMatrix wbarPrime;
  LatticeMatrix wInv;
  LatticeMatrix wbarPrimeInv;
  int interiorMargin = 0;

  /// Wraps given factors, computing the inverses.
  static FactorizationResult fromFactors(LatticeMatrix w, LatticeMatrix wbarPrime, int margin = 0);

  int size() const { return static_cast<int>(w.rows()); }
};

/// Doolittle elimination over ℚ(s0). Throws SingularMinor naming the first
/// leading principal minor that vanishes.
FactorizationResult gaussFactorize(const LatticeMatrix& u, int interiorMargin = 0);

/// L = WΛW⁻¹ and L̄' = W̄'ΛW̄'⁻¹. Unstripped: L̄ = Q⁻¹L̄' and L̄^{-b} = Q^b W̄'Λ^{-b}W̄'⁻¹.
struct LaxMatrices {
  LatticeMatrix l;
  LatticeMatrix lbarPrime;
};
LaxMatrices extractLax(const FactorizationResult& f);

/// Q^b W̄'Λ^{-b}W̄'⁻¹, the lattice form of L̄^{-b}.
LatticeMatrix lbarPowerMinusB(const FactorizationResult& f, int b, const Rational& q);

/// Adds every nonzero interior entry of lhs - rhs to the report.
void compareInterior(ResidualReport& r, const std::string& part, const LatticeMatrix& lhs,
                     const LatticeMatrix& rhs, int margin);

/// W·U - W̄' on the interior block.
ResidualReport verifyFactorization(const LatticeMatrix& u, const FactorizationResult& f);

/// WΛ^aW⁻¹ + ν(∂W)W⁻¹ = Q^bW̄'Λ^{-b}W̄'⁻¹ + ν(∂W̄')W̄'⁻¹: the reduction
/// condition with log Λ = ∂_s - (∂W)W⁻¹ substituted and the bare ∂_s and
/// ν log Q cancelled. At ν = 0 this is L^a = L̄^{-b}.
ResidualReport verifyReduction(const FactorizationResult& f, int a, int b, const LatticeSample& sample);

/// B_a + B̄_b with B_a = (L^a)_{>=0}, B̄_b = (L̄^{-b})_{<0}, and the check
/// L^a + ν(∂W)W⁻¹ = B_a + B̄_b.
struct ReducedLax {
  LatticeMatrix frakL;
  ResidualReport report;
};
ReducedLax reducedLaxOperator(const FactorizationResult& f, int a, int b, const LatticeSample& sample);

/// Time directions for the first-order jets.
enum class Flow { T, TBar, TTilde };
struct Direction {
  Flow flow;
  int k;

  friend bool operator==(const Direction&, const Direction&) = default;
};

/// dU along a direction, for the stripped core U (U_full = U·Q^H):
///   t_k:  Λ^k U
///   t̄_k:  -Q^k U Λ^{-k}
///   T̃_k:  Λ^{ka} ∂U, the log Q free part. The log Q part is Λ^{ka}U,
///         which is the t_{ka} direction.
LatticeMatrix flowDerivative(const LatticeMatrix& u, Direction d, int a, const Rational& q);

struct JetOp {
  LatticeMatrix base;
  std::vector<std::pair<Direction, LatticeMatrix>> first;

  const LatticeMatrix& along(Direction d) const;
};

struct JetPair {
  JetOp w;
  JetOp wbarPrime;
};

/// First-order change of the factors of U + ε·dU:
///   dW = -(W dU W̄'⁻¹)_{<0} W,   dW̄' = (W dU W̄'⁻¹)_{>=0} W̄'.
JetPair jetFactorize(const LatticeMatrix& u, const FactorizationResult& f,
                     const std::vector<Direction>& directions, int a, const Rational& q);

/// ∂W/∂t1 = B1W - WΛ, ∂W̄'/∂t1 = B1W̄', ∂W/∂t̄1 = B̄1W, ∂W̄'/∂t̄1 = B̄1W̄' - QW̄'Λ⁻¹
/// with B1 = (L)_{>=0}, B̄1 = (L̄⁻¹)_{<0} = (QW̄'Λ⁻¹W̄'⁻¹)_{<0}.
ResidualReport verifySato(const LatticeMatrix& u, const FactorizationResult& f, const LatticeSample& sample);

/// C_k = 𝓛^k logΛ + finite + (log Q)·logQ with 𝓛 = WΛ^aW⁻¹ and
///   finite = -(𝓛^k(∂W)W⁻¹)_{>=0} - (L̄^{-kb}(∂W̄')W̄'⁻¹)_{<0}
///   logQ   = -(L̄^{-kb})_{<0}
/// where L̄^{-kb} is built from W̄'. The log Q piece comes from
/// (∂W̄)W̄⁻¹ = (∂W̄')W̄'⁻¹ + log Q.
struct CkParts {
  LatticeMatrix lk;  // 𝓛^k
  LatticeMatrix finite;
  LatticeMatrix logQ;
};
CkParts computeCk(const FactorizationResult& f, int a, int b, int k, const Rational& q);

/// ∂W/∂T̃_k = C_kW - WΛ^{ka}logΛ at ν = 0. Moving logΛ through W leaves
/// 𝓛^k(∂W) + finite·W for the log Q free part and logQ·W for the rest,
/// compared against the T̃_k and t_{ka} jets.
ResidualReport verifyExtendedSato(const LatticeMatrix& u, const FactorizationResult& f, int a, int b, int k,
                                  const LatticeSample& sample);

/// Exact finite-lattice cores satisfying Λ^aU - ν∂U = Q^bUΛ^{-b} entry for
/// entry, with Λ the finite shift: U(s0) = exp(s0·T/ν)U0 for
/// T(X) = Λ^aX - Q^bXΛ^{-b}, which is nilpotent. ν must be nonzero.
LatticeMatrix equivariantFixture(int a, int b, int m, const LatticeSample& sample,
                                 const LatticeMatrixOf<Rational>& u0);
/// A default seed. For a = b the entries are linear in s0, built from two
/// ν = 0 cores; otherwise the series above with a banded U0.
LatticeMatrix equivariantFixture(int a, int b, int m, const LatticeSample& sample);
/// ν = 0 cores with Λ^aU = Q^bUΛ^{-b}: U(i, j) = Q^{bp}h_r(bp + j) for
/// i = ap + r, with h_r(n) = 0 past the point where the finite shift
/// truncates. `h(r, n)` supplies the entries as polynomials in s0.
template <class H>
LatticeMatrix hankelFixture(int a, int b, int m, const Rational& q, H&& h);
/// Default ν = 0 fixture with h_r(n) linear in s0 and scrambled in n.
LatticeMatrix hankelFixture(int a, int b, int m, const Rational& q);
/// T(X) = Λ^aX - Q^bXΛ^{-b} on the finite section.
LatticeMatrix intertwinerDefect(const LatticeMatrix& u, int a, int b, const Rational& q);

/// Interior margin for an operator section: the width of its trusted band.
int interiorMarginFor(const LambdaOp& op);

std::string describe(const LatticeMatrix& a);

template <class H>
LatticeMatrix hankelFixture(int a, int b, int m, const Rational& q, H&& h) {
  const int n = 2 * m + 1;
  LatticeMatrix u = LatticeMatrix::Constant(n, n, RatFunc());
  for (int i = 0; i < n; ++i) {
    const int p = i / a, r = i % a;
    for (int j = 0; j < n; ++j) {
      const int idx = b * p + j;
      // Row class r stops where the last rows' shifted copies would leave the section.
      const int rowsLeft = (n - 1 - r) / a;
      if (idx >= std::min(n, b * rowsLeft + b)) continue;
      u(i, j) = RatFunc(UniPoly(h(r, idx))) * RatFunc(power(q, b * p));
    }
  }
  return u;
}

}  // namespace toda
