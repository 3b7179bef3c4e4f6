#pragma once

#include <vector>

#include "json.hpp"
#include "toda/lambda_op.hpp"
#include "toda/residual.hpp"

namespace toda {

/// One antidifference solved during a build: f(s+step) - f(s) = g.
struct AntidifferenceCall {
  PolyCoeff g;
  int step = 1;
  PolyCoeff f;
};
using AntidifferenceLog = std::vector<AntidifferenceCall>;

/// V0 = Σ v_{0n} Λ^{-n} on orders [-window, 0], solving
/// v_{0,n+a}(s+a) - v_{0,n+a}(s) = -H v_{0n}(s) from v_{00} = 1.
LambdaOp buildV0(int a, int window, AntidifferenceLog* log = nullptr);

/// V = Σ_k ν^k V_k for k <= nuOrder.
///
/// V_k = V0·X_k where [Λ^a, X_k] = V0⁻¹[logΛ, V_{k-1}], each X_k solved order by
/// order with the zero-constant antidifference. When nuOrder·a >= window every
/// trusted coefficient is complete in ν and the result carries no ν cap.
LambdaOp buildV(int a, int nuOrder, int window, AntidifferenceLog* log = nullptr);

/// V̄ = V*|_{ν → -ν} built from V at step b.
LambdaOp buildVbar(int b, int nuOrder, int window, AntidifferenceLog* log = nullptr);

/// V̄ from its own recursion V̄_k = Y_k V̄0 with [Λ^{-b}, Y_k] = [logΛ, V̄_{k-1}]V̄0⁻¹.
/// Only a cross-check: its gauge need not match buildVbar.
LambdaOp buildVbarDirect(int b, int nuOrder, int window);

/// (Λ^a + H - νlogΛ)V - V(Λ^a - νlogΛ).
ResidualReport verifyVRel(const LambdaOp& v, int a, int nuOrder);
/// V̄(Λ^{-b} + H - νlogΛ) - (Λ^{-b} - νlogΛ)V̄.
ResidualReport verifyVbarRel(const LambdaOp& vbar, int b, int nuOrder);

/// Entries of ν^k Λ^{-n} with k > n/step that are not zero (order sign
/// flipped for V̄, whose orders are positive).
std::vector<std::pair<int, int>> sparsityViolations(const LambdaOp& v, int step);

struct DressingPair {
  LambdaOp v;
  LambdaOp vbar;
  int a = 1;
  int b = 1;
  int nuOrder = 0;
  int window = 0;
};

DressingPair buildDressingPair(int a, int b, int nuOrder, int window, AntidifferenceLog* log = nullptr);
nlohmann::json toJson(const DressingPair& p);
DressingPair dressingPairFromJson(const nlohmann::json& j);

/// The operator with its ν^j part removed (a negative control).
LambdaOp dropNuComponent(const LambdaOp& v, int j);

}  // namespace toda
