#include "toda/reduction.hpp"

#include <algorithm>
#include <string>

namespace toda {

namespace {

LambdaOp hOp() { return LambdaOp::diagonal(PolyCoeff::H()); }
LambdaOp nuLog() { return LambdaOp::diagonal(PolyCoeff::nu()) * LambdaOp::logLambda(); }
LambdaOp qShiftB(int b) { return LambdaOp::monomial(PolyCoeff::Q(b), -b); }

LambdaOp power(const LambdaOp& x, int k) {
  LambdaOp out = LambdaOp::identity();
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

int minWidth(const StrippedU& u) { return 2 * std::max(u.a, u.b); }

void link(ResidualReport& r, const std::string& name, const LambdaOp& lhs, const LambdaOp& rhs, int nuOrder,
          int width) {
  LambdaOp diff = (lhs - rhs).capNu(nuOrder);
  requireBandWidth(diff.band(), width, name);
  r.addResidual(name, diff);
}

LambdaOp expOf(int order, int step, int window) {
  return opExp(LambdaOp::shift(order) * rational(1, step), window);
}

}  // namespace

LambdaOp StrippedU::core() const { return vInv * expA * conjExpB * conjVbarInv; }

StrippedU assembleU(const LambdaOp& v, const LambdaOp& vbar, int a, int b, int window) {
  StrippedU u;
  u.a = a;
  u.b = b;
  u.window = window;
  u.nuOrder = minCap(v.nuCap(), vbar.nuCap());
  u.vInv = opInvert(v, window);
  u.expA = expOf(a, a, window);
  u.conjExpB = conjQH(expOf(-b, b, window));
  u.conjVbarInv = conjQH(opInvert(vbar, window));
  return u;
}

StrippedU assembleU(const DressingPair& p) { return assembleU(p.v, p.vbar, p.a, p.b, p.window); }

StrippedU assembleU0(int a, int b, int window) {
  return assembleU(buildV0(a, window), adjoint(buildV0(b, window)), a, b, window);
}

LambdaOp::TermMap collapseTruncated(const StrippedU& u) {
  LambdaOp::TermMap acc{{{0, 0}, PolyCoeff(1)}};
  for (const LambdaOp* f : {&u.vInv, &u.expA, &u.conjExpB, &u.conjVbarInv}) {
    LambdaOp::TermMap next;
    for (const auto& [ka, ca] : acc) {
      for (const auto& [kb, cb] : f->terms()) {
        PolyCoeff term = mulTruncated(ca, polyShift(cb, ka.second), u.nuOrder);
        auto [it, inserted] = next.try_emplace({0, ka.second + kb.second}, term);
        if (!inserted) it->second += term;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second.isZero(); });
    acc = std::move(next);
  }
  return acc;
}

ResidualReport verifyUIntertwine(const StrippedU& u, int nuOrder) {
  return runCheck("u", [&](ResidualReport& r) {
    const int cap = minCap(u.nuOrder, nuOrder);
    const int w = minWidth(u);
    const LambdaOp shiftA = LambdaOp::shift(u.a);
    const LambdaOp qb = qShiftB(u.b);
    link(r, "V^-1", (shiftA - nuLog()) * u.vInv, u.vInv * (shiftA + hOp() - nuLog()), cap, w);
    link(r, "exp(L^a/a)", (shiftA + hOp() - nuLog()) * u.expA, u.expA * (hOp() - nuLog()), cap, w);
    link(r, "conj exp(L^-b/b)", (hOp() - nuLog()) * u.conjExpB, u.conjExpB * (qb + hOp() - nuLog()), cap, w);
    link(r, "conj Vbar^-1", (qb + hOp() - nuLog()) * u.conjVbarInv, u.conjVbarInv * (qb - nuLog()), cap, w);
  });
}

ResidualReport verifyU0Commute(const StrippedU& u0) {
  return runCheck("u0", [&](ResidualReport& r) {
    const int w = minWidth(u0);
    const LambdaOp shiftA = LambdaOp::shift(u0.a);
    const LambdaOp qb = qShiftB(u0.b);
    link(r, "V0^-1", shiftA * u0.vInv, u0.vInv * (shiftA + hOp()), 0, w);
    link(r, "exp(L^a/a)", (shiftA + hOp()) * u0.expA, u0.expA * hOp(), 0, w);
    link(r, "conj exp(L^-b/b)", hOp() * u0.conjExpB, u0.conjExpB * (qb + hOp()), 0, w);
    link(r, "conj Vbar0^-1", (qb + hOp()) * u0.conjVbarInv, u0.conjVbarInv * qb, 0, w);
  });
}

ResidualReport verifyU0Refinement(const StrippedU& u0, const LambdaOp& middle) {
  return runCheck("u0ref", [&](ResidualReport& r) {
    const int w = minWidth(u0);
    const LambdaOp shiftA = LambdaOp::shift(u0.a);
    const LambdaOp qb = qShiftB(u0.b);
    // Left half: Λ^a V0⁻¹ e^{Λ^a/a} = V0⁻¹ e^{Λ^a/a} M.
    link(r, "V0^-1", shiftA * u0.vInv, u0.vInv * (shiftA + hOp()), 0, w);
    link(r, "exp(L^a/a) middle", (shiftA + hOp()) * u0.expA, u0.expA * middle, 0, w);
    // Right half: M conj(e^{Λ^-b/b} V̄0⁻¹) = conj(e^{Λ^-b/b} V̄0⁻¹) Q^bΛ^{-b}.
    link(r, "middle conj exp(L^-b/b)", middle * u0.conjExpB, u0.conjExpB * (qb + hOp()), 0, w);
    link(r, "conj Vbar0^-1", (qb + hOp()) * u0.conjVbarInv, u0.conjVbarInv * qb, 0, w);
  });
}

ResidualReport verifyU0Refinement(const StrippedU& u0) { return verifyU0Refinement(u0, hOp()); }

ResidualReport verifyU0Flows(const StrippedU& u0, int kmax) {
  return runCheck("u0flows", [&](ResidualReport& r) {
    const int w = minWidth(u0);
    if (kmax * std::max(u0.a, u0.b) + w > u0.window + 1) {
      throw BandTooNarrow("flows up to k = " + std::to_string(kmax) + " need a window of at least " +
                          std::to_string(kmax * std::max(u0.a, u0.b) + w - 1));
    }
    const LambdaOp shiftA = LambdaOp::shift(u0.a);
    const LambdaOp qb = qShiftB(u0.b);
    for (int k = 1; k <= kmax; ++k) {
      const std::string tag = " k=" + std::to_string(k);
      const LambdaOp left = power(shiftA + hOp(), k);
      const LambdaOp right = power(qb + hOp(), k);
      link(r, "V0^-1" + tag, power(shiftA, k) * u0.vInv, u0.vInv * left, 0, w);
      link(r, "exp(L^a/a)" + tag, left * u0.expA, u0.expA * power(hOp(), k), 0, w);
      link(r, "conj exp(L^-b/b)" + tag, power(hOp(), k) * u0.conjExpB, u0.conjExpB * right, 0, w);
      link(r, "conj Vbar0^-1" + tag, right * u0.conjVbarInv, u0.conjVbarInv * power(qb, k), 0, w);
    }
  });
}

}  // namespace toda
