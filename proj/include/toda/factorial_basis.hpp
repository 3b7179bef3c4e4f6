#pragma once

#include <vector>

#include "toda/poly_coeff.hpp"

namespace toda {

/// Expansion sum_k c_k p_k(s) in the a-step factorial products
/// p_k(s) = s(s-a)...(s-(k-1)a), p_0 = 1. Each c_k is free of s.
struct FactorialBasisExpansion {
  int step = 1;
  std::vector<PolyCoeff> coefficients;

  friend bool operator==(const FactorialBasisExpansion&, const FactorialBasisExpansion&) = default;
};

/// p_k(s) for step a.
PolyCoeff factorialProduct(int k, int step);

/// Newton expansion at the nodes 0, a, 2a, ... (evaluate, then divide out the node).
FactorialBasisExpansion toFactorialBasis(const PolyCoeff& p, int step);
PolyCoeff fromFactorialBasis(const FactorialBasisExpansion& e);

/// f(s+a) - f(s) for the step a.
PolyCoeff forwardDifference(const PolyCoeff& f, int step);

/// The polynomial f with f(s+a) - f(s) = g and f(0) = 0.
///
/// Uses Δ_a p_{k+1} = (k+1)·a·p_k, so p_k maps to p_{k+1}/((k+1)a).
PolyCoeff antidifference(const PolyCoeff& g, int step);

}  // namespace toda
