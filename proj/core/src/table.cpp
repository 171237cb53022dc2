#include "ghr/table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include "ghr/errors.hpp"

namespace ghr {
namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  bool parametric;
  bool real_valued;
};

constexpr std::array<FamilyInfo, 28> kFamilies{{
    {Family::Linear, "linear", true, false},
    {Family::ConjLinear, "conj_linear", true, false},
    {Family::Square, "square", false, false},
    {Family::ConjSquare, "conj_square", false, false},
    {Family::LinearSquare, "linear_square", true, false},
    {Family::ConjLinearSquare, "conj_linear_square", true, false},
    {Family::Inverse, "inverse", false, false},
    {Family::ConjInverse, "conj_inverse", false, false},
    {Family::LinearInverse, "linear_inverse", true, false},
    {Family::ConjLinearInverse, "conj_linear_inverse", true, false},
    {Family::RealPart, "real_part", false, true},
    {Family::LinearRealPart, "linear_real_part", true, true},
    {Family::ConjLinearRealPart, "conj_linear_real_part", true, true},
    {Family::Modulus, "modulus", false, true},
    {Family::ModulusSquared, "modulus_squared", false, true},
    {Family::LinearModulus, "linear_modulus", true, true},
    {Family::ConjLinearModulus, "conj_linear_modulus", true, true},
    {Family::LinearModulusSquared, "linear_modulus_squared", true, true},
    {Family::ConjLinearModulusSquared, "conj_linear_modulus_squared", true, true},
    {Family::UnitVector, "unit_vector", false, false},
    {Family::ConjUnitVector, "conj_unit_vector", false, false},
    {Family::LinearUnitVector, "linear_unit_vector", true, false},
    {Family::ConjLinearUnitVector, "conj_linear_unit_vector", true, false},
    {Family::VectorModulus, "vector_modulus", false, true},
    {Family::UnitPureAxis, "unit_pure_axis", false, false},
    {Family::ArctanArg, "arctan_arg", false, true},
    {Family::Power, "power", false, false},
    {Family::Exponential, "exponential", false, false},
}};

const FamilyInfo& info(Family family) {
  for (const FamilyInfo& fi : kFamilies) {
    if (fi.family == family) {
      return fi;
    }
  }
  throw ConfigError("unknown function family");
}

bool uses_conj_argument(Family f) {
  switch (f) {
    case Family::ConjLinear:
    case Family::ConjLinearSquare:
    case Family::ConjLinearInverse:
    case Family::ConjLinearRealPart:
    case Family::ConjLinearModulus:
    case Family::ConjLinearModulusSquared:
    case Family::ConjLinearUnitVector:
      return true;
    default:
      return false;
  }
}

// Families whose value (not only derivative) is singular.
bool value_singular(Family f) {
  switch (f) {
    case Family::Inverse:
    case Family::ConjInverse:
    case Family::LinearInverse:
    case Family::ConjLinearInverse:
    case Family::UnitVector:
    case Family::ConjUnitVector:
    case Family::LinearUnitVector:
    case Family::ConjLinearUnitVector:
    case Family::UnitPureAxis:
    case Family::ArctanArg:
      return true;
    default:
      return false;
  }
}

std::string_view constraint(Family f) {
  switch (f) {
    case Family::Inverse:
    case Family::ConjInverse:
    case Family::UnitVector:
    case Family::ConjUnitVector:
    case Family::Modulus:
      return "|q| >= 1e-9";
    case Family::VectorModulus:
    case Family::UnitPureAxis:
      return "|V_q| >= 1e-9";
    case Family::ArctanArg:
      return "|V_q| >= 1e-9 and |q| >= 1e-9";
    default:
      return "|omega q nu + lambda| >= 1e-9";
  }
}

void guard(const TableEntry& entry, const Quaternion& q) {
  if (!(entry.singularity_distance(q) >= kDomainGuard)) {
    throw DomainError(entry.label() + " requires " + std::string(constraint(entry.family())) +
                      ", got q = " + to_string(q));
  }
}

Quaternion re(const Quaternion& q) { return real_part(q); }

Quaternion pure_unit(const Quaternion& q) {
  const Quaternion v = vector_part(q);
  return v / modulus(v);
}

// sum_{m=1}^{n} q^{n-m} R(q^{m-1} mu) and -1/2 sum q^{n-m} (q^{m-1} mu)*, given powers[k] = q^k.
std::pair<Quaternion, Quaternion> power_terms(const std::vector<Quaternion>& powers, int n,
                                              const Quaternion& mu) {
  Quaternion plain;
  Quaternion conj;
  for (int m = 1; m <= n; ++m) {
    const Quaternion lead = powers[static_cast<std::size_t>(n - m)];
    const Quaternion tail = powers[static_cast<std::size_t>(m - 1)] * mu;
    plain += lead * re(tail);
    conj -= 0.5 * (lead * conjugate(tail));
  }
  return {plain, conj};
}

std::vector<Quaternion> powers_of(const Quaternion& q, int count) {
  std::vector<Quaternion> powers(static_cast<std::size_t>(count) + 1);
  powers[0] = kOne;
  for (std::size_t k = 1; k < powers.size(); ++k) {
    powers[k] = powers[k - 1] * q;
  }
  return powers;
}

}  // namespace

TableEntry::TableEntry(Family family, LinearParams params, int order)
    : family_(family), params_(params), order_(order) {
  if (family == Family::Power && order < 1) {
    throw ConfigError("power exponent must be a positive integer");
  }
  if (family == Family::Exponential && order < 1) {
    throw ConfigError("exponential truncation must be at least one term");
  }
  if (family != Family::Power && family != Family::Exponential) {
    order_ = 0;
  }
  if (!parametric()) {
    params_ = {};
  }
}

bool TableEntry::parametric() const { return info(family_).parametric; }
bool TableEntry::real_valued() const { return info(family_).real_valued; }

std::string TableEntry::label() const {
  std::string name(family_name(family_));
  if (family_ == Family::Power || family_ == Family::Exponential) {
    name += "(" + std::to_string(order_) + ")";
  }
  return name;
}

double TableEntry::singularity_distance(const Quaternion& q) const {
  const LinearParams& p = params_;
  const Quaternion arg = uses_conj_argument(family_) ? conjugate(q) : q;
  switch (family_) {
    case Family::Inverse:
    case Family::ConjInverse:
    case Family::UnitVector:
    case Family::ConjUnitVector:
    case Family::Modulus:
      return modulus(q);
    case Family::VectorModulus:
    case Family::UnitPureAxis:
    case Family::ArctanArg:
      return std::min(modulus(vector_part(q)), modulus(q));
    case Family::LinearInverse:
    case Family::ConjLinearInverse:
    case Family::LinearModulus:
    case Family::ConjLinearModulus:
    case Family::LinearUnitVector:
    case Family::ConjLinearUnitVector:
      return modulus(p.omega * arg * p.nu + p.lambda);
    default:
      return std::numeric_limits<double>::infinity();
  }
}

Quaternion TableEntry::operator()(const Quaternion& q) const { return eval(*this, q); }

QFunction TableEntry::function() const {
  return [entry = *this](const Quaternion& q) { return eval(entry, q); };
}

GhrPair EntryDerivatives::bare() const {
  const Quaternion mu_inv = inverse(mu);
  return {d_mu_times_mu * mu_inv, d_mu_conj_times_mu * mu_inv, mu};
}

Quaternion eval(const TableEntry& entry, const Quaternion& q) {
  const Family f = entry.family();
  if (value_singular(f)) {
    guard(entry, q);
  }
  const LinearParams& p = entry.params();
  const Quaternion g = p.omega * (uses_conj_argument(f) ? conjugate(q) : q) * p.nu + p.lambda;

  switch (f) {
    case Family::Linear:
    case Family::ConjLinear:
      return g;
    case Family::Square:
      return q * q;
    case Family::ConjSquare:
      return conjugate(q) * conjugate(q);
    case Family::LinearSquare:
    case Family::ConjLinearSquare:
      return g * g;
    case Family::Inverse:
      return inverse(q);
    case Family::ConjInverse:
      return inverse(conjugate(q));
    case Family::LinearInverse:
    case Family::ConjLinearInverse:
      return inverse(g);
    case Family::RealPart:
      return re(q);
    case Family::LinearRealPart:
    case Family::ConjLinearRealPart:
      return re(g);
    case Family::Modulus:
      return modulus(q);
    case Family::ModulusSquared:
      return modulus_squared(q);
    case Family::LinearModulus:
    case Family::ConjLinearModulus:
      return modulus(g);
    case Family::LinearModulusSquared:
    case Family::ConjLinearModulusSquared:
      return modulus_squared(g);
    case Family::UnitVector:
      return q / modulus(q);
    case Family::ConjUnitVector:
      return conjugate(q) / modulus(q);
    case Family::LinearUnitVector:
    case Family::ConjLinearUnitVector:
      return g / modulus(g);
    case Family::VectorModulus:
      return modulus(vector_part(q));
    case Family::UnitPureAxis:
      return pure_unit(q);
    case Family::ArctanArg:
      return std::atan2(modulus(vector_part(q)), q.a);
    case Family::Power: {
      Quaternion result = q;
      for (int k = 1; k < entry.order(); ++k) {
        result = result * q;
      }
      return result;
    }
    case Family::Exponential: {
      Quaternion sum = kOne;
      Quaternion term = kOne;
      for (int n = 1; n <= entry.order(); ++n) {
        term = term * q / static_cast<double>(n);
        sum += term;
      }
      return sum;
    }
  }
  throw ConfigError("unknown function family");
}

EntryDerivatives derivative(const TableEntry& entry, const Quaternion& q, const Quaternion& mu) {
  if (modulus_squared(mu) == 0.0) {
    throw DomainError("derivative axis mu must be nonzero");
  }
  guard(entry, q);

  const Family f = entry.family();
  const LinearParams& p = entry.params();
  const Quaternion& w = p.omega;
  const Quaternion& v = p.nu;
  const Quaternion qc = conjugate(q);
  const Quaternion g = w * (uses_conj_argument(f) ? qc : q) * v + p.lambda;
  const double gn = modulus(g);
  const double qn = modulus(q);
  const Quaternion vm = v * mu;

  EntryDerivatives out;
  out.mu = mu;
  Quaternion& d = out.d_mu_times_mu;
  Quaternion& dc = out.d_mu_conj_times_mu;

  switch (f) {
    case Family::Linear:
      d = w * re(vm);
      dc = -0.5 * (w * conjugate(vm));
      break;
    case Family::ConjLinear:
      d = -0.5 * (w * conjugate(vm));
      dc = w * re(vm);
      break;
    case Family::Square:
      d = q * re(mu) + re(q * mu);
      dc = -0.5 * (q * conjugate(mu)) - 0.5 * conjugate(q * mu);
      break;
    case Family::ConjSquare:
      d = -0.5 * (qc * conjugate(mu)) - 0.5 * conjugate(qc * mu);
      dc = qc * re(mu) + re(qc * mu);
      break;
    case Family::LinearSquare:
      d = g * w * re(vm) + w * re(v * g * mu);
      dc = -0.5 * (g * w * conjugate(vm)) - 0.5 * (w * conjugate(v * g * mu));
      break;
    case Family::ConjLinearSquare:
      d = -0.5 * (g * w * conjugate(vm)) - 0.5 * (w * conjugate(v * g * mu));
      dc = g * w * re(vm) + w * re(v * g * mu);
      break;
    case Family::Inverse: {
      const Quaternion qi = inverse(q);
      d = -(qi * re(qi * mu));
      dc = 0.5 * (qi * conjugate(mu) * inverse(qc));
      break;
    }
    case Family::ConjInverse: {
      const Quaternion qci = inverse(qc);
      d = 0.5 * (qci * conjugate(mu) * inverse(q));
      dc = -(qci * re(qci * mu));
      break;
    }
    case Family::LinearInverse: {
      const Quaternion gi = inverse(g);
      d = -(gi * w * re(v * gi * mu));
      dc = 0.5 * (gi * w * conjugate(v * gi * mu));
      break;
    }
    case Family::ConjLinearInverse: {
      const Quaternion gi = inverse(g);
      d = 0.5 * (gi * w * conjugate(v * gi * mu));
      dc = -(gi * w * re(v * gi * mu));
      break;
    }
    case Family::RealPart:
      d = 0.25 * mu;
      dc = 0.25 * mu;
      break;
    case Family::LinearRealPart:
      d = 0.25 * (mu * v * w);
      dc = 0.25 * (mu * conjugate(w) * conjugate(v));
      break;
    case Family::ConjLinearRealPart:
      d = 0.25 * (mu * conjugate(w) * conjugate(v));
      dc = 0.25 * (mu * v * w);
      break;
    case Family::Modulus:
      d = (mu * qc) / (4.0 * qn);
      dc = (mu * q) / (4.0 * qn);
      break;
    case Family::ModulusSquared:
      d = 0.5 * (mu * qc);
      dc = 0.5 * (mu * q);
      break;
    case Family::LinearModulus: {
      const Quaternion s = conjugate(w) * g * mu;
      d = conjugate(g) * w * re(vm) / (2.0 * gn) - conjugate(v) * conjugate(s) / (4.0 * gn);
      dc = -(conjugate(g) * w * conjugate(vm)) / (4.0 * gn) + conjugate(v) * re(s) / (2.0 * gn);
      break;
    }
    case Family::ConjLinearModulus: {
      const Quaternion wm = conjugate(w) * mu;
      const Quaternion s = v * conjugate(g) * mu;
      d = g * conjugate(v) * re(wm) / (2.0 * gn) - w * conjugate(s) / (4.0 * gn);
      dc = -(g * conjugate(v) * conjugate(wm)) / (4.0 * gn) + w * re(s) / (2.0 * gn);
      break;
    }
    case Family::LinearModulusSquared: {
      const Quaternion s = conjugate(w) * g * mu;
      d = conjugate(g) * w * re(vm) - 0.5 * (conjugate(v) * conjugate(s));
      dc = -0.5 * (conjugate(g) * w * conjugate(vm)) + conjugate(v) * re(s);
      break;
    }
    case Family::ConjLinearModulusSquared: {
      const Quaternion wm = conjugate(w) * mu;
      const Quaternion s = v * conjugate(g) * mu;
      d = g * conjugate(v) * re(wm) - 0.5 * (w * conjugate(s));
      dc = -0.5 * (g * conjugate(v) * conjugate(wm)) + w * re(s);
      break;
    }
    case Family::UnitVector: {
      const double qn3 = qn * qn * qn;
      d = re(mu) / qn - (q * mu * qc) / (4.0 * qn3);
      dc = -conjugate(mu) / (2.0 * qn) - (q * mu * q) / (4.0 * qn3);
      break;
    }
    case Family::ConjUnitVector: {
      const double qn3 = qn * qn * qn;
      d = -conjugate(mu) / (2.0 * qn) - (qc * mu * qc) / (4.0 * qn3);
      dc = re(mu) / qn - (qc * mu * q) / (4.0 * qn3);
      break;
    }
    case Family::LinearUnitVector: {
      const double gn3 = gn * gn * gn;
      const Quaternion s = conjugate(w) * g * mu;
      d = w * re(vm) / (2.0 * gn) + g * conjugate(v) * conjugate(s) / (4.0 * gn3);
      dc = -(w * conjugate(vm)) / (4.0 * gn) - g * conjugate(v) * re(s) / (2.0 * gn3);
      break;
    }
    case Family::ConjLinearUnitVector: {
      // Quotient rule applied to g = f |g| with the conj_linear_modulus row.
      const TableEntry norm_entry(Family::ConjLinearModulus, p);
      const EntryDerivatives dn = derivative(norm_entry, q, mu);
      const Quaternion unit_g = g / gn;
      d = -(w * conjugate(vm)) / (2.0 * gn) - unit_g * dn.d_mu_times_mu / gn;
      dc = w * re(vm) / gn - unit_g * dn.d_mu_conj_times_mu / gn;
      break;
    }
    case Family::VectorModulus: {
      const Quaternion axis = pure_unit(q);
      d = -0.25 * (mu * axis);
      dc = 0.25 * (mu * axis);
      break;
    }
    case Family::UnitPureAxis: {
      const Quaternion axis = pure_unit(q);
      const double alpha = modulus(vector_part(q));
      d = (2.0 * conjugate(mu) + mu - rotate(mu, axis)) / (4.0 * alpha);
      dc = -d;
      break;
    }
    case Family::ArctanArg: {
      const Quaternion axis = pure_unit(q);
      const double n2 = modulus_squared(q);
      d = -(mu * axis * qc) / (4.0 * n2);
      dc = (mu * axis * q) / (4.0 * n2);
      break;
    }
    case Family::Power: {
      const int n = entry.order();
      const auto [plain, conj] = power_terms(powers_of(q, n), n, mu);
      d = plain;
      dc = conj;
      break;
    }
    case Family::Exponential: {
      const int terms = entry.order();
      const std::vector<Quaternion> powers = powers_of(q, terms);
      std::vector<double> inv_factorial(static_cast<std::size_t>(terms) + 1, 1.0);
      for (int n = 1; n <= terms; ++n) {
        inv_factorial[static_cast<std::size_t>(n)] =
            inv_factorial[static_cast<std::size_t>(n - 1)] / static_cast<double>(n);
      }
      // Regrouped as sum_m R(q^{m-1} mu) sum_{n>=m} q^{n-m}/n!.
      for (int m = 1; m <= terms; ++m) {
        Quaternion lead;
        for (int n = m; n <= terms; ++n) {
          lead += powers[static_cast<std::size_t>(n - m)] * inv_factorial[static_cast<std::size_t>(n)];
        }
        const Quaternion tail = powers[static_cast<std::size_t>(m - 1)] * mu;
        d += lead * re(tail);
        dc -= 0.5 * (lead * conjugate(tail));
      }
      // Omitted terms n > N contribute at most sum_{k>=N} |q|^k/k! |mu|.
      out.tail_bound = std::pow(qn, terms) * inv_factorial[static_cast<std::size_t>(terms)] *
                       std::exp(qn) * modulus(mu);
      break;
    }
  }
  return out;
}

std::string_view family_name(Family family) { return info(family).name; }

std::optional<Family> family_from_name(std::string_view name) {
  for (const FamilyInfo& fi : kFamilies) {
    if (fi.name == name) {
      return fi.family;
    }
  }
  return std::nullopt;
}

std::vector<TableEntry> catalogue() {
  std::vector<TableEntry> out;
  out.reserve(kFamilies.size());
  for (const FamilyInfo& fi : kFamilies) {
    if (fi.family == Family::Power) {
      out.push_back(TableEntry::power(3));
    } else if (fi.family == Family::Exponential) {
      out.push_back(TableEntry::exponential());
    } else {
      out.emplace_back(fi.family);
    }
  }
  return out;
}

TableEntry randomize(const TableEntry& entry, Rng& rng) {
  if (entry.family() == Family::Power) {
    return TableEntry::power(1 + static_cast<int>(rng.next_u64() % 5));
  }
  if (!entry.parametric()) {
    return entry;
  }
  auto draw = [&rng](double min_modulus) {
    while (true) {
      const Quaternion x = rng.uniform_quaternion(-1.0, 1.0);
      if (modulus(x) >= min_modulus) {
        return x;
      }
    }
  };
  LinearParams params;
  params.omega = draw(0.25);
  params.nu = draw(0.25);
  params.lambda = draw(0.0);
  return TableEntry(entry.family(), params, entry.order());
}

bool admissible(const TableEntry& entry, const Quaternion& q, double margin) {
  return entry.singularity_distance(q) >= std::max(margin, kDomainGuard);
}

Quaternion sample_admissible_point(const TableEntry& entry, Rng& rng, double margin) {
  while (true) {
    const Quaternion q = random_point(rng);
    if (admissible(entry, q, margin)) {
      return q;
    }
  }
}

}  // namespace ghr
