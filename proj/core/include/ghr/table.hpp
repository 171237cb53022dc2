#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghr/derivative.hpp"
#include "ghr/quaternion.hpp"
#include "ghr/random.hpp"

namespace ghr {

// Function families with closed-form GHR derivatives. "Linear" families act on
// g = omega q nu + lambda, "ConjLinear" families on g = omega q* nu + lambda.
enum class Family {
  Linear,
  ConjLinear,
  Square,
  ConjSquare,
  LinearSquare,
  ConjLinearSquare,
  Inverse,
  ConjInverse,
  LinearInverse,
  ConjLinearInverse,
  RealPart,
  LinearRealPart,
  ConjLinearRealPart,
  Modulus,
  ModulusSquared,
  LinearModulus,
  ConjLinearModulus,
  LinearModulusSquared,
  ConjLinearModulusSquared,
  UnitVector,
  ConjUnitVector,
  LinearUnitVector,
  ConjLinearUnitVector,
  VectorModulus,
  UnitPureAxis,
  ArctanArg,
  Power,
  Exponential,
};

inline constexpr int kDefaultExpTerms = 30;
inline constexpr double kDomainGuard = 1e-9;

struct LinearParams {
  Quaternion omega{1.0};
  Quaternion nu{1.0};
  Quaternion lambda{0.0};
};

class TableEntry {
 public:
  // order is the exponent for Power and the truncation for Exponential; ignored otherwise.
  explicit TableEntry(Family family, LinearParams params = {}, int order = 0);

  static TableEntry power(int n) { return TableEntry(Family::Power, {}, n); }
  static TableEntry exponential(int terms = kDefaultExpTerms) {
    return TableEntry(Family::Exponential, {}, terms);
  }

  Family family() const { return family_; }
  const LinearParams& params() const { return params_; }
  int order() const { return order_; }

  bool parametric() const;
  bool real_valued() const;

  // Family name, with the order appended for Power and Exponential, e.g. "power(3)".
  std::string label() const;

  // Distance from the family's singular set at q: |g|, |q| or |V_q| as appropriate,
  // +infinity for families that are smooth everywhere.
  double singularity_distance(const Quaternion& q) const;

  Quaternion operator()(const Quaternion& q) const;
  QFunction function() const;

 private:
  Family family_;
  LinearParams params_;
  int order_;
};

// The Table-1 convention: derivatives right-multiplied by mu.
struct EntryDerivatives {
  Quaternion d_mu_times_mu;
  Quaternion d_mu_conj_times_mu;
  Quaternion mu;
  // Truncation bound for series families; zero for exact rows.
  double tail_bound = 0.0;

  // Bare derivatives, recovered by right-multiplying mu^-1.
  GhrPair bare() const;
};

// Throws DomainError naming the family and constraint when q is outside the domain.
Quaternion eval(const TableEntry& entry, const Quaternion& q);

// Throws DomainError for mu = 0 or q outside the derivative's domain.
EntryDerivatives derivative(const TableEntry& entry, const Quaternion& q, const Quaternion& mu);

std::string_view family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);

// One template per family with unit parameters (omega = nu = 1, lambda = 0),
// Power(3) and Exponential(30).
std::vector<TableEntry> catalogue();

// Draws omega, nu and lambda with components uniform in [-1, 1] (|omega|, |nu| >= 0.25)
// for parametric families and an exponent in [1, 5] for Power.
TableEntry randomize(const TableEntry& entry, Rng& rng);

// True when q keeps at least `margin` away from the entry's singular set.
bool admissible(const TableEntry& entry, const Quaternion& q, double margin = kDomainGuard);

// Draws random_point() samples until one is admissible with the given margin.
Quaternion sample_admissible_point(const TableEntry& entry, Rng& rng, double margin);

}  // namespace ghr
