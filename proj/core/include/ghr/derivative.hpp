#pragma once

#include <array>
#include <functional>

#include "ghr/quaternion.hpp"

namespace ghr {

// A pure map H -> H. Evaluators must be deterministic and reentrant.
using QFunction = std::function<Quaternion(const Quaternion&)>;

inline constexpr double kFirstOrderStep = 1e-6;
inline constexpr double kSecondOrderStep = 1e-4;
inline constexpr double kRealValuedThreshold = 1e-12;
inline constexpr double kDegenerateAxis = 1e-9;

// Central-difference partials of f with respect to the four real components.
struct RealPartials {
  Quaternion d_qa;
  Quaternion d_qb;
  Quaternion d_qc;
  Quaternion d_qd;
  Quaternion point;
  double step = 0.0;
};

enum class Flavor { left, right };

// The eight first-order HR derivatives.
struct DerivativeSet {
  Quaternion wrt_q;
  Quaternion wrt_qi;
  Quaternion wrt_qj;
  Quaternion wrt_qk;
  Quaternion wrt_qc;
  Quaternion wrt_qic;
  Quaternion wrt_qjc;
  Quaternion wrt_qkc;
  Flavor flavor = Flavor::left;

  // {d/dq, d/dq^i, d/dq^j, d/dq^k}
  std::array<Quaternion, 4> plain() const { return {wrt_q, wrt_qi, wrt_qj, wrt_qk}; }
  // {d/dq*, d/dq^{i*}, d/dq^{j*}, d/dq^{k*}}
  std::array<Quaternion, 4> conjugates() const { return {wrt_qc, wrt_qic, wrt_qjc, wrt_qkc}; }
};

// Derivatives with respect to q^mu and q^{mu*}.
struct GhrPair {
  Quaternion d_mu;
  Quaternion d_mu_conj;
  Quaternion mu;
};

// Throws ConfigError for h <= 0 and EvaluationError when f is not finite on the stencil.
RealPartials real_partials(const QFunction& f, const Quaternion& q, double h = kFirstOrderStep);

DerivativeSet left_hr(const RealPartials& p);
DerivativeSet right_hr(const RealPartials& p);
DerivativeSet left_hr(const QFunction& f, const Quaternion& q, double h = kFirstOrderStep);
DerivativeSet right_hr(const QFunction& f, const Quaternion& q, double h = kFirstOrderStep);

// Throws DomainError for mu = 0.
GhrPair left_ghr(const RealPartials& p, const Quaternion& mu);
GhrPair right_ghr(const RealPartials& p, const Quaternion& mu);
GhrPair left_ghr(const QFunction& f, const Quaternion& q, const Quaternion& mu,
                 double h = kFirstOrderStep);
GhrPair right_ghr(const QFunction& f, const Quaternion& q, const Quaternion& mu,
                  double h = kFirstOrderStep);

// Outer derivative along mu of the inner derivative along nu.
struct SecondOrder {
  Quaternion mu_nu;    // d/dq^mu     (df/dq^nu)
  Quaternion muc_nuc;  // d/dq^{mu*}  (df/dq^{nu*})
  Quaternion mu_nuc;   // d/dq^mu     (df/dq^{nu*})
  Quaternion muc_nu;   // d/dq^{mu*}  (df/dq^nu)
};

// Nested central differences, step h2 at both levels.
SecondOrder second_order_left(const QFunction& f, const Quaternion& q, const Quaternion& mu,
                              const Quaternion& nu, double h2 = kSecondOrderStep);

// Largest residual of the left GHR product rule in its q^mu and q^{mu*} forms. The
// shifted derivative of f is taken along the value g(q) mu. Throws PreconditionError
// when |g(q) mu| < kDegenerateAxis.
double check_product_rule(const QFunction& f, const QFunction& g, const Quaternion& q,
                          const Quaternion& mu, double h = kFirstOrderStep);

// Largest residual over the four left GHR chain-rule identities for f(g(q)), with inner
// axes nu eta for eta in {1, i, j, k}. Throws PreconditionError when |mu nu| < kDegenerateAxis.
double check_chain_rule(const QFunction& f, const QFunction& g, const Quaternion& q,
                        const Quaternion& mu, const Quaternion& nu, double h = kFirstOrderStep);

// Residual of f(g(q)) against f'(g) dg/dq^mu (and the mu* form) for real-valued g and a
// real function f with derivative f_prime.
double check_real_chain_rule(const std::function<double(double)>& f,
                             const std::function<double(double)>& f_prime, const QFunction& g,
                             const Quaternion& q, const Quaternion& mu,
                             double h = kFirstOrderStep);

// Largest residual of the four relations linking left and right GHR derivatives through f*.
double conjugation_relation(const QFunction& f, const Quaternion& q, const Quaternion& mu,
                            double h = kFirstOrderStep);

// True when every stencil value of f has imaginary magnitude <= kRealValuedThreshold.
bool is_real_valued(const QFunction& f, const Quaternion& q, double h = kFirstOrderStep);

// q -> f(q)*.
QFunction conjugated(QFunction f);
// q -> f(g(q)).
QFunction compose(QFunction f, QFunction g);
// q -> f(q) g(q).
QFunction product(QFunction f, QFunction g);

}  // namespace ghr
