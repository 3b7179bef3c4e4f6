#pragma once

#include "toda/dressing.hpp"
#include "toda/lambda_op.hpp"
#include "toda/residual.hpp"

namespace toda {

/// U with Q^H moved to the far right: U = core·Q^H, where
/// core = V⁻¹ · e^{Λ^a/a} · Q^H(e^{Λ^{-b}/b} V̄⁻¹)Q^{-H}.
///
/// The factors are kept apart. V⁻¹ and Q^H e^{Λ^{-b}/b} Q^{-H} are series
/// unbounded below while e^{Λ^a/a} and Q^H V̄⁻¹ Q^{-H} are unbounded above, so
/// every coefficient of the multiplied-out core is an infinite sum.
struct StrippedU {
  LambdaOp vInv;
  LambdaOp expA;         // e^{Λ^a/a}
  LambdaOp conjExpB;     // Q^H e^{Λ^{-b}/b} Q^{-H}
  LambdaOp conjVbarInv;  // Q^H V̄⁻¹ Q^{-H}
  int a = 1;
  int b = 1;
  int nuOrder = 0;
  int window = 0;

  /// The multiplied-out core. Throws EmptyBand: no coefficient is exact.
  LambdaOp core() const;
};

StrippedU assembleU(const LambdaOp& v, const LambdaOp& vbar, int a, int b, int window);
StrippedU assembleU(const DressingPair& p);
/// The ν = 0 variant built from V0 and V̄0.
StrippedU assembleU0(int a, int b, int window);

/// Product of the truncated factors with every band ignored. Its coefficients
/// move when the window grows; useful only to show that.
LambdaOp::TermMap collapseTruncated(const StrippedU& u);

/// (Λ^a - νlogΛ)·core = core·(Q^bΛ^{-b} - νlogΛ), checked factor by factor:
///   (Λ^a - νlogΛ) V⁻¹            = V⁻¹ (Λ^a + H - νlogΛ)
///   (Λ^a + H - νlogΛ) e^{Λ^a/a}  = e^{Λ^a/a} (H - νlogΛ)
///   (H - νlogΛ) conj(e^{Λ^-b/b}) = conj(e^{Λ^-b/b}) (Q^bΛ^{-b} + H - νlogΛ)
///   (Q^bΛ^{-b} + H - νlogΛ) conj(V̄⁻¹) = conj(V̄⁻¹) (Q^bΛ^{-b} - νlogΛ)
/// Composing the four gives the identity for the core.
ResidualReport verifyUIntertwine(const StrippedU& u, int nuOrder);

/// Λ^a·core0 = Q^b·core0·Λ^{-b}: the links above at ν = 0.
ResidualReport verifyU0Commute(const StrippedU& u0);

/// Λ^a·core0 = V0⁻¹e^{Λ^a/a}·M·conj(e^{Λ^-b/b}V̄0⁻¹) = core0·Q^bΛ^{-b} with M = H.
/// `middle` replaces M (a negative control passes 1).
ResidualReport verifyU0Refinement(const StrippedU& u0, const LambdaOp& middle);
ResidualReport verifyU0Refinement(const StrippedU& u0);

/// Λ^{ka}·core0 = V0⁻¹e^{Λ^a/a}·H^k·conj(e^{Λ^-b/b}V̄0⁻¹) = Q^{kb}·core0·Λ^{-kb}
/// for k = 1..kmax.
ResidualReport verifyU0Flows(const StrippedU& u0, int kmax);

}  // namespace toda
