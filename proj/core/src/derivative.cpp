#include "ghr/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ghr/errors.hpp"

namespace ghr {
namespace {

Quaternion checked_eval(const QFunction& f, const Quaternion& p) {
  const Quaternion v = f(p);
  if (!is_finite(v)) {
    throw EvaluationError("non-finite function value", p);
  }
  return v;
}

// Central difference along one real coordinate. The divisor is the spacing actually
// realised in floating point, which differs from 2h when the coordinate is large.
Quaternion central_difference(const QFunction& f, const Quaternion& q, double Quaternion::*coord,
                              double h) {
  Quaternion plus = q;
  Quaternion minus = q;
  plus.*coord += h;
  minus.*coord -= h;
  const double spacing = plus.*coord - minus.*coord;
  return (checked_eval(f, plus) - checked_eval(f, minus)) / spacing;
}

RealPartials conjugate_partials(const RealPartials& p) {
  return {conjugate(p.d_qa), conjugate(p.d_qb), conjugate(p.d_qc), conjugate(p.d_qd), p.point,
          p.step};
}

double distance(const Quaternion& p, const Quaternion& q) { return modulus(p - q); }

}  // namespace

RealPartials real_partials(const QFunction& f, const Quaternion& q, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ConfigError("finite-difference step must be positive and finite");
  }
  RealPartials p;
  p.d_qa = central_difference(f, q, &Quaternion::a, h);
  p.d_qb = central_difference(f, q, &Quaternion::b, h);
  p.d_qc = central_difference(f, q, &Quaternion::c, h);
  p.d_qd = central_difference(f, q, &Quaternion::d, h);
  p.point = q;
  p.step = h;
  return p;
}

DerivativeSet left_hr(const RealPartials& p) {
  const Quaternion& fa = p.d_qa;
  const Quaternion bi = p.d_qb * kI;
  const Quaternion cj = p.d_qc * kJ;
  const Quaternion dk = p.d_qd * kK;
  DerivativeSet s;
  s.wrt_q = 0.25 * (fa - bi - cj - dk);
  s.wrt_qi = 0.25 * (fa - bi + cj + dk);
  s.wrt_qj = 0.25 * (fa + bi - cj + dk);
  s.wrt_qk = 0.25 * (fa + bi + cj - dk);
  s.wrt_qc = 0.25 * (fa + bi + cj + dk);
  s.wrt_qic = 0.25 * (fa + bi - cj - dk);
  s.wrt_qjc = 0.25 * (fa - bi + cj - dk);
  s.wrt_qkc = 0.25 * (fa - bi - cj + dk);
  s.flavor = Flavor::left;
  return s;
}

DerivativeSet right_hr(const RealPartials& p) {
  const Quaternion& fa = p.d_qa;
  const Quaternion bi = kI * p.d_qb;
  const Quaternion cj = kJ * p.d_qc;
  const Quaternion dk = kK * p.d_qd;
  DerivativeSet s;
  s.wrt_q = 0.25 * (fa - bi - cj - dk);
  s.wrt_qi = 0.25 * (fa - bi + cj + dk);
  s.wrt_qj = 0.25 * (fa + bi - cj + dk);
  s.wrt_qk = 0.25 * (fa + bi + cj - dk);
  s.wrt_qc = 0.25 * (fa + bi + cj + dk);
  s.wrt_qic = 0.25 * (fa + bi - cj - dk);
  s.wrt_qjc = 0.25 * (fa - bi + cj - dk);
  s.wrt_qkc = 0.25 * (fa - bi - cj + dk);
  s.flavor = Flavor::right;
  return s;
}

DerivativeSet left_hr(const QFunction& f, const Quaternion& q, double h) {
  return left_hr(real_partials(f, q, h));
}

DerivativeSet right_hr(const QFunction& f, const Quaternion& q, double h) {
  return right_hr(real_partials(f, q, h));
}

GhrPair left_ghr(const RealPartials& p, const Quaternion& mu) {
  const MuBasis basis = mu_basis(mu);
  const Quaternion bi = p.d_qb * basis.i_mu;
  const Quaternion cj = p.d_qc * basis.j_mu;
  const Quaternion dk = p.d_qd * basis.k_mu;
  return {0.25 * (p.d_qa - bi - cj - dk), 0.25 * (p.d_qa + bi + cj + dk), mu};
}

GhrPair right_ghr(const RealPartials& p, const Quaternion& mu) {
  const MuBasis basis = mu_basis(mu);
  const Quaternion bi = basis.i_mu * p.d_qb;
  const Quaternion cj = basis.j_mu * p.d_qc;
  const Quaternion dk = basis.k_mu * p.d_qd;
  return {0.25 * (p.d_qa - bi - cj - dk), 0.25 * (p.d_qa + bi + cj + dk), mu};
}

GhrPair left_ghr(const QFunction& f, const Quaternion& q, const Quaternion& mu, double h) {
  mu_basis(mu);  // rejects mu = 0 before any evaluation
  return left_ghr(real_partials(f, q, h), mu);
}

GhrPair right_ghr(const QFunction& f, const Quaternion& q, const Quaternion& mu, double h) {
  mu_basis(mu);
  return right_ghr(real_partials(f, q, h), mu);
}

SecondOrder second_order_left(const QFunction& f, const Quaternion& q, const Quaternion& mu,
                              const Quaternion& nu, double h2) {
  mu_basis(mu);
  mu_basis(nu);
  const QFunction inner = [&](const Quaternion& p) { return left_ghr(f, p, nu, h2).d_mu; };
  const QFunction inner_conj = [&](const Quaternion& p) {
    return left_ghr(f, p, nu, h2).d_mu_conj;
  };
  const GhrPair outer = left_ghr(inner, q, mu, h2);
  const GhrPair outer_conj = left_ghr(inner_conj, q, mu, h2);
  return {outer.d_mu, outer_conj.d_mu_conj, outer_conj.d_mu, outer.d_mu_conj};
}

double check_product_rule(const QFunction& f, const QFunction& g, const Quaternion& q,
                          const Quaternion& mu, double h) {
  mu_basis(mu);
  const Quaternion fq = checked_eval(f, q);
  const Quaternion gq = checked_eval(g, q);
  const Quaternion shifted_axis = gq * mu;
  if (modulus(shifted_axis) < kDegenerateAxis) {
    throw PreconditionError("degenerate rotation axis: |g(q) mu| = " +
                            std::to_string(modulus(shifted_axis)));
  }
  const GhrPair whole = left_ghr(product(f, g), q, mu, h);
  const GhrPair dg = left_ghr(g, q, mu, h);
  const GhrPair df_shifted = left_ghr(f, q, shifted_axis, h);

  const double r_plain = distance(whole.d_mu, fq * dg.d_mu + df_shifted.d_mu * gq);
  const double r_conj = distance(whole.d_mu_conj, fq * dg.d_mu_conj + df_shifted.d_mu_conj * gq);
  return std::max(r_plain, r_conj);
}

double check_chain_rule(const QFunction& f, const QFunction& g, const Quaternion& q,
                        const Quaternion& mu, const Quaternion& nu, double h) {
  if (modulus(mu * nu) < kDegenerateAxis) {
    throw PreconditionError("degenerate rotation axis: |mu nu| = " +
                            std::to_string(modulus(mu * nu)));
  }
  const Quaternion gq = checked_eval(g, q);
  const GhrPair whole = left_ghr(compose(f, g), q, mu, h);
  const RealPartials outer_partials = real_partials(f, gq, h);

  Quaternion sum_plain;       // sum of df/dg^{nu eta}    dg^{nu eta}/dq^mu
  Quaternion sum_plain_conj;  // sum of df/dg^{nu eta}    dg^{nu eta}/dq^{mu*}
  Quaternion sum_conj;        // sum of df/dg^{nu eta *}  dg^{nu eta *}/dq^mu
  Quaternion sum_conj_conj;   // sum of df/dg^{nu eta *}  dg^{nu eta *}/dq^{mu*}
  for (const Quaternion& eta : kBasis) {
    const Quaternion axis = nu * eta;
    const GhrPair outer = left_ghr(outer_partials, axis);
    const QFunction rotated = [&](const Quaternion& p) { return rotate(g(p), axis); };
    const RealPartials inner_partials = real_partials(rotated, q, h);
    const GhrPair inner = left_ghr(inner_partials, mu);
    const GhrPair inner_c = left_ghr(conjugate_partials(inner_partials), mu);
    sum_plain += outer.d_mu * inner.d_mu;
    sum_plain_conj += outer.d_mu * inner.d_mu_conj;
    sum_conj += outer.d_mu_conj * inner_c.d_mu;
    sum_conj_conj += outer.d_mu_conj * inner_c.d_mu_conj;
  }
  return std::max({distance(whole.d_mu, sum_plain), distance(whole.d_mu_conj, sum_plain_conj),
                   distance(whole.d_mu, sum_conj), distance(whole.d_mu_conj, sum_conj_conj)});
}

double check_real_chain_rule(const std::function<double(double)>& f,
                             const std::function<double(double)>& f_prime, const QFunction& g,
                             const Quaternion& q, const Quaternion& mu, double h) {
  if (!is_real_valued(g, q, h)) {
    throw PreconditionError("inner function of a real chain must be real-valued");
  }
  const QFunction composite = [&](const Quaternion& p) { return Quaternion(f(g(p).a)); };
  const GhrPair whole = left_ghr(composite, q, mu, h);
  const GhrPair dg = left_ghr(g, q, mu, h);
  const double slope = f_prime(checked_eval(g, q).a);
  return std::max(distance(whole.d_mu, slope * dg.d_mu),
                  distance(whole.d_mu_conj, slope * dg.d_mu_conj));
}

double conjugation_relation(const QFunction& f, const Quaternion& q, const Quaternion& mu,
                            double h) {
  mu_basis(mu);
  const RealPartials pf = real_partials(f, q, h);
  const RealPartials pfc = real_partials(conjugated(f), q, h);
  const GhrPair l = left_ghr(pf, mu);
  const GhrPair r = right_ghr(pf, mu);
  const GhrPair lc = left_ghr(pfc, mu);
  const GhrPair rc = right_ghr(pfc, mu);
  return std::max({distance(r.d_mu, conjugate(lc.d_mu_conj)),
                   distance(r.d_mu_conj, conjugate(lc.d_mu)),
                   distance(l.d_mu, conjugate(rc.d_mu_conj)),
                   distance(l.d_mu_conj, conjugate(rc.d_mu))});
}

bool is_real_valued(const QFunction& f, const Quaternion& q, double h) {
  auto imaginary_ok = [&](const Quaternion& p) {
    return modulus(vector_part(f(p))) <= kRealValuedThreshold;
  };
  if (!imaginary_ok(q)) {
    return false;
  }
  for (const Quaternion& e : kBasis) {
    if (!imaginary_ok(q + h * e) || !imaginary_ok(q - h * e)) {
      return false;
    }
  }
  return true;
}

QFunction conjugated(QFunction f) {
  return [f = std::move(f)](const Quaternion& q) { return conjugate(f(q)); };
}

QFunction compose(QFunction f, QFunction g) {
  return [f = std::move(f), g = std::move(g)](const Quaternion& q) { return f(g(q)); };
}

QFunction product(QFunction f, QFunction g) {
  return [f = std::move(f), g = std::move(g)](const Quaternion& q) { return f(q) * g(q); };
}

}  // namespace ghr
