#pragma once

#include "toda/exp_coeff.hpp"
#include "toda/lambda_op.hpp"
#include "toda/residual.hpp"

namespace toda {

/// 1/(1+m)_k = Γ(1+m)/Γ(1+m+k) = m!/(m+k)!, and 0 for k < -m where
/// Γ(1+m+k) has a pole.
Rational reciprocalPochhammer(int m, int k);

/// 𝓔_k(z) = e^{z(H + k/2)}Λ^k, coefficient β^{zs + z(k-1)/2}.
ExpLambdaOp buildE(int k, const Rational& z);

/// Weight multiplying 𝓔_k in 𝒜: ζ(w) = β^{w/2} - β^{-w/2}, or (as a negative
/// control) w itself.
enum class AWeight { Zeta, PlainW };

/// 𝒜(m, w) = (ζ(w)/w)^m Σ_{k>=-m} ζ(w)^k/(1+m)_k 𝓔_k(w) with w = mu,
/// orders -m..window.
ExpLambdaOp buildA(int m, const Rational& u, int window, AWeight weight = AWeight::Zeta);
/// 𝒜̃(m, w) = Σ_{k>=-m} w^k/(1+m)_k Λ^k, orders -m..window.
ExpLambdaOp buildATilde(int m, const Rational& u, int window);

/// V at a = 1 with ν = 1/u substituted. Built complete in ν, so the
/// substitution is exact on the band.
LambdaOp dressingAt(const Rational& u, int window);

/// e^Λ𝓔_{-m}(mu)e^{-Λ}·V = V·e^{muΛ}Λ^{-m}, checked through its derivation:
///   X^j V = V Y^j for j <= 3, X = u(Λ+H) - logΛ, Y = uΛ - logΛ
///   e^Λ (uH - logΛ) e^{-Λ} = X
///   [muH, -m logΛ] = m²u is central, so e^{m(uH - logΛ)} = 𝓔_{-m}(mu)
///   [uΛ, logΛ] = 0, so e^{mY} = e^{muΛ}Λ^{-m}
ResidualReport verifyBCH(int m, const Rational& u, int window, const LambdaOp& v);
ResidualReport verifyBCH(int m, const Rational& u, int window);

/// 𝒜(m,mu)V = V𝒜̃(m,mu): the BCH links plus the closed forms
///   𝒜 = (m!/w^m) e^Λ 𝓔_{-m}(w) e^{-Λ},  𝒜̃ = (m!/w^m) e^{wΛ} Λ^{-m}.
ResidualReport verifyAV(int m, const Rational& u, int window, const LambdaOp& v, const ExpLambdaOp& a);
ResidualReport verifyAV(int m, const Rational& u, int window);

}  // namespace toda
