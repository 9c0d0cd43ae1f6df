#include "jumpgue/cpiv.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "jumpgue/error.hpp"

namespace jumpgue {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kDegenerate = 1e-13;

double imag_ratio(cplx z) { return std::abs(z) > 0.0 ? std::fabs(z.imag()) / std::abs(z) : 0.0; }

double rel_to(double got, double want) { return std::fabs(got - want) / std::max(1.0, std::fabs(want)); }

struct JumpData {
  double a = 0.0, ab = 0.0, abb = 0.0;
  double imag = 0.0;
};

// One jump: c = jump coefficient, sk = location, sign = -1 at s1 and +1 at s2
// (the exponent of the second column entry is e^{∓sx - s²/2}).
JumpData jump_products(const RecurrenceTable& table, int n, double c, double sk, double x, double s,
                       double sign) {
  const OpPair v = eval_monic_pair(table, n, sk);
  if (v.p_prev == 0.0) fail(ErrorTag::degenerate_jump, "pi_{n-1} vanishes at a jump location");
  const double log_g2 = 2.0 * table.log_gamma[n - 1];
  const cplx two_pi_i(0.0, 2.0 * kPi);
  const cplx pref = c / two_pi_i;

  // Mantissas of the first-row entries; true value = mantissa · e^{E}.
  const cplx m12 = -two_pi_i * v.p_prev;
  const double e12 = log_g2 - 0.5 * x * x - 0.5 * sk * sk + v.log_scale;
  const cplx m22 = v.p;
  const double e22 = -sign * s * x - 0.5 * s * s + v.log_scale;
  const double ey = std::log(4.0 * kPi) + log_g2 - x * x;  // y = i·e^{ey}
  const cplx i1(0.0, 1.0);

  const cplx za = -pref * m12 * m12 / i1;  // a = -(c/2πi) P12² / y
  const cplx zab = pref * m12 * m22;        // ab = (c/2πi) P12 P22
  const cplx zabb = -pref * m22 * m22 * i1; // ab² = -(c/2πi) P22² y

  JumpData out;
  out.a = za.real() * std::exp(2.0 * e12 - ey);
  out.ab = zab.real() * std::exp(e12 + e22);
  out.abb = zabb.real() * std::exp(2.0 * e22 + ey);
  out.imag = std::max({imag_ratio(za), imag_ratio(zab), imag_ratio(zabb)});
  return out;
}

}  // namespace

CPIVState reconstruct_cpiv(const RecurrenceTable& table, int n) {
  const JumpWeightSpec& spec = table.spec;
  require(n >= 1 && n + 1 <= table.n_max, "reconstruct_cpiv: need 1 <= n and n + 1 <= n_max");
  require(spec.s1 < spec.s2, "reconstruct_cpiv: two distinct jumps required");
  require(spec.omega1 != 1.0, "reconstruct_cpiv: omega1 == 1 removes the first jump");
  require(spec.omega1 != spec.omega2, "reconstruct_cpiv: omega1 == omega2 removes the second jump");

  CPIVState st;
  st.n = n;
  st.x = 0.5 * (spec.s1 + spec.s2);
  st.s = 0.5 * (spec.s2 - spec.s1);
  st.log_gamma = table.log_gamma[n - 1];
  st.log_y_im = std::log(4.0 * kPi) + 2.0 * st.log_gamma - st.x * st.x;
  st.y_im = std::exp(st.log_y_im);

  const JumpData j1 = jump_products(table, n, 1.0 - spec.omega1, spec.s1, st.x, st.s, -1.0);
  const JumpData j2 = jump_products(table, n, spec.omega1 - spec.omega2, spec.s2, st.x, st.s, 1.0);
  if (std::fabs(j1.a) < kDegenerate || std::fabs(j2.a) < kDegenerate)
    fail(ErrorTag::degenerate_jump, "a_k below 1e-13: jump too weak to reconstruct b_k");
  st.a1 = j1.a;
  st.a2 = j2.a;
  st.b1 = j1.ab / j1.a;
  st.b2 = j2.ab / j2.a;
  st.max_imag_rel = std::max(j1.imag, j2.imag);
  return st;
}

double hamiltonian_iv(const CPIVState& st) {
  const double ab1 = st.a1 * st.b1, ab2 = st.a2 * st.b2;
  const double n = st.n;
  return -2.0 * (ab1 + ab2 + n) * (st.a1 + st.a2) + 2.0 * (ab1 * (st.x - st.s) + ab2 * (st.x + st.s) + n * st.x) -
         (ab1 * st.b1 + ab2 * st.b2);
}

IdentityResiduals identity_residuals(const RecurrenceTable& table, const CPIVState& st) {
  const JumpWeightSpec& spec = table.spec;
  const int n = st.n;
  const double ab1 = st.a1 * st.b1, ab2 = st.a2 * st.b2;
  const double abb1 = ab1 * st.b1, abb2 = ab2 * st.b2;
  IdentityResiduals r;
  r.alpha = rel_to((abb1 + abb2) / (2.0 * (ab1 + ab2 + n)), table.alpha[n]);
  r.beta = rel_to(0.5 * (ab1 + ab2 + n), table.beta2[n]);
  // γ_{n-1}² e^{-x²}·4π against y_im, compared in log form.
  const double log_pred = st.log_y_im + st.x * st.x - std::log(4.0 * kPi);
  r.gamma0 = std::fabs(std::expm1(log_pred - 2.0 * table.log_gamma[n - 1]));
  r.f_h = rel_to(hamiltonian_iv(st) - 2.0 * n * st.x, hankel_F_cd(table, n));

  // π_n(s_k)² = (2πi / (ω_b - ω_a)) e^{s² ∓ 2sx} a_k b_k² / y; the i cancels.
  auto pns = [&](double abb, double denom, double sign, double sk) {
    const double ratio = abb / denom;
    const OpPair v = eval_monic_pair(table, n, sk);
    if (!(ratio > 0.0) || v.p == 0.0) return 1.0;
    const double log_pred = std::log(2.0 * kPi * ratio) + st.s * st.s + sign * 2.0 * st.s * st.x - st.log_y_im;
    return std::fabs(std::expm1(log_pred - 2.0 * (std::log(std::fabs(v.p)) + v.log_scale)));
  };
  r.pns1 = pns(abb1, spec.omega1 - 1.0, -1.0, spec.s1);
  r.pns2 = pns(abb2, spec.omega2 - spec.omega1, 1.0, spec.s2);
  return r;
}

std::array<double, 5> cpiv_rhs(const CPIVState& st) {
  const double a1 = st.a1, a2 = st.a2, b1 = st.b1, b2 = st.b2, x = st.x, s = st.s;
  const double n = st.n;
  return {
      2.0 * (a1 + a2 - x),
      -2.0 * a1 * (a1 + a2 + b1 - x + s),
      -2.0 * a2 * (a1 + a2 + b2 - x - s),
      b1 * b1 + 2.0 * b1 * (2.0 * a1 + a2 - x + s) + 2.0 * (a2 * b2 + n),
      b2 * b2 + 2.0 * b2 * (a1 + 2.0 * a2 - x - s) + 2.0 * (a1 * b1 + n),
  };
}

std::array<CPIVState, 5> cpiv_stencil(const JumpWeightSpec& spec, int n, double h, const QuadratureOptions& opts) {
  require(h > 0.0, "cpiv_stencil: h must be positive");
  std::array<CPIVState, 5> out;
  for (int j = -2; j <= 2; ++j) {
    const JumpWeightSpec shifted =
        JumpWeightSpec::two_jump(spec.s1 + j * h, spec.s2 + j * h, spec.omega1, spec.omega2);
    out[j + 2] = reconstruct_cpiv(compute_recurrence(shifted, n + 1, opts), n);
  }
  return out;
}

namespace {

std::array<double, 5> components(const CPIVState& st) { return {st.log_y_im, st.a1, st.a2, st.b1, st.b2}; }

}  // namespace

CPIVOdeReport cpiv_ode_residual(const std::array<CPIVState, 5>& stc, double h) {
  CPIVOdeReport rep;
  rep.h = h;
  rep.n = stc[2].n;
  const auto lo = components(stc[1]), hi = components(stc[3]);
  const auto rhs = cpiv_rhs(stc[2]);
  for (int k = 0; k < 5; ++k) {
    const double fd = (hi[k] - lo[k]) / (2.0 * h);
    rep.residual[k] = std::fabs(fd - rhs[k]);
    rep.scaled[k] = rep.residual[k] / std::max(1.0, std::fabs(rhs[k]));
  }
  const double dlg = (-stc[4].log_gamma + 8.0 * stc[3].log_gamma - 8.0 * stc[1].log_gamma + stc[0].log_gamma) /
                     (12.0 * h);
  const double sum = stc[2].a1 + stc[2].a2;
  rep.dlog_gamma = std::fabs(dlg - sum) / std::max(1.0, std::fabs(sum));
  return rep;
}

CPIVOdeReport cpiv_ode_residual(const JumpWeightSpec& spec, int n, double h, const QuadratureOptions& opts) {
  return cpiv_ode_residual(cpiv_stencil(spec, n, h, opts), h);
}

CPIVSecondOrderReport cpiv_second_order_residual(const std::array<CPIVState, 5>& stc, double h) {
  const CPIVState& c = stc[2];
  const double n = c.n, x = c.x, s = c.s;
  const double sum = c.a1 + c.a2;
  auto residual = [&](double am, double a0, double ap, double sign) {
    const double d1 = (ap - am) / (2.0 * h);
    const double d2 = (ap - 2.0 * a0 + am) / (h * h);
    const double xs = x + sign * s;
    const double terms[] = {d2,
                            -d1 * d1 / (2.0 * a0),
                            -6.0 * a0 * sum * sum,
                            8.0 * a0 * sum * x,
                            sign * 8.0 * a0 * a0 * s,
                            2.0 * (2.0 * n - 1.0) * a0,
                            -2.0 * a0 * xs * xs};
    double total = 0.0, scale = 0.0;
    for (double t : terms) {
      total += t;
      scale += std::fabs(t);
    }
    return std::fabs(total) / scale;
  };
  CPIVSecondOrderReport rep;
  rep.h = h;
  rep.a1 = residual(stc[1].a1, c.a1, stc[3].a1, -1.0);
  rep.a2 = residual(stc[1].a2, c.a2, stc[3].a2, 1.0);

  // y_IV(ξ) = -2 a1(ξ + s) evaluated at ξ = x - s.
  const double xi = x - s;
  const double ym = -2.0 * stc[1].a1, y0 = -2.0 * c.a1, yp = -2.0 * stc[3].a1;
  const double d1 = (yp - ym) / (2.0 * h), d2 = (yp - 2.0 * y0 + ym) / (h * h);
  const double terms[] = {d2, -d1 * d1 / (2.0 * y0), -1.5 * y0 * y0 * y0, -4.0 * xi * y0 * y0,
                          -2.0 * (xi * xi + 1.0 - 2.0 * n) * y0};
  double total = 0.0, scale = 0.0;
  for (double t : terms) {
    total += t;
    scale += std::fabs(t);
  }
  rep.piv = std::fabs(total) / scale;
  return rep;
}

double edge_location(int n, double t) {
  return std::sqrt(2.0 * n) + t / (std::sqrt(2.0) * std::pow(static_cast<double>(n), 1.0 / 6.0));
}

CPIVScalingReport cpiv_scaling_check(int n, double t1, double t2, double omega1, double omega2,
                                     const CPIIPoint& limit, const QuadratureOptions& opts) {
  require(t1 < t2, "cpiv_scaling_check: t1 < t2 required");
  require(omega1 != omega2 && omega1 != 1.0, "cpiv_scaling_check: omega1 must differ from 1 and omega2");
  const auto spec = JumpWeightSpec::two_jump(edge_location(n, t1), edge_location(n, t2), omega1, omega2);
  const auto table = compute_recurrence(spec, n + 1, opts);
  CPIVScalingReport rep;
  rep.n = n;
  rep.state = reconstruct_cpiv(table, n);
  const double nd = n;
  const double scale = std::sqrt(2.0) * std::pow(nd, 1.0 / 6.0);
  rep.a1 = std::fabs(rep.state.a1 * scale + limit.v1);
  rep.a2 = std::fabs(rep.state.a2 * scale + limit.v2);
  rep.b1 = std::fabs(rep.state.b1 / std::sqrt(2.0 * nd) - 1.0);
  rep.b2 = std::fabs(rep.state.b2 / std::sqrt(2.0 * nd) - 1.0);
  const double log_lead = std::log(2.0) + (nd - 0.5) * std::log(2.0 / nd) - nd - (t1 + t2) * std::cbrt(nd);
  rep.y = std::fabs(std::expm1(rep.state.log_y_im - log_lead));
  return rep;
}

}  // namespace jumpgue
