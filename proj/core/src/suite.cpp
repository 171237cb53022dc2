#include "ghr/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ghr/derivative.hpp"
#include "ghr/errors.hpp"
#include "ghr/random.hpp"
#include "ghr/table.hpp"

namespace ghr {
namespace {

constexpr double kSampleMargin = 0.25;
constexpr double kChainRange = 4.0;
constexpr double kReconstructionStep = 1e-3;
constexpr int kMaxAttempts = 1000;

struct Tolerance {
  double abs;
  double rel;
};

constexpr Tolerance kFirstOrder{1e-6, 1e-5};
constexpr Tolerance kExact{1e-10, 1e-10};
constexpr Tolerance kRealFlavor{1e-8, 0.0};
constexpr Tolerance kSecondOrder{1e-3, 0.0};
constexpr Tolerance kReconstruction{0.5, 0.0};

double dist(const Quaternion& p, const Quaternion& q) { return modulus(p - q); }

class Context {
 public:
  Context(const SuiteOptions& options, IdentityReport& report)
      : options_(options), report_(report), catalogue_(catalogue()) {
    for (const TableEntry& e : catalogue_) {
      if (e.real_valued()) {
        real_.push_back(e);
      }
    }
  }

  void record(const std::string& name, const Quaternion& q, std::optional<Quaternion> mu,
              std::optional<Quaternion> nu, double residual, Tolerance tol, double scale = 0.0,
              bool extra_condition = true) {
    double limit = tol.abs + tol.rel * scale;
    if (auto it = options_.tolerances.find(name); it != options_.tolerances.end()) {
      limit = it->second;
    }
    report_.records.push_back(
        {name, q, mu, nu, residual, limit, extra_condition && residual <= limit});
  }

  void skip(const std::string& name) { ++report_.skipped[name]; }

  TableEntry entry(Rng& rng, bool real_only = false) const {
    const std::vector<TableEntry>& pool = real_only ? real_ : catalogue_;
    return randomize(pool[rng.next_u64() % pool.size()], rng);
  }

 private:
  const SuiteOptions& options_;
  IdentityReport& report_;
  std::vector<TableEntry> catalogue_;
  std::vector<TableEntry> real_;
};

using Check = std::function<void(Context&, Rng&)>;

double worst(std::initializer_list<double> values) { return std::max(values); }

void hr_identity_q(Context& ctx, Rng& rng) {
  const Quaternion q = random_point(rng);
  const DerivativeSet d = left_hr([](const Quaternion& p) { return p; }, q);
  const double r = worst({dist(d.wrt_q, 1.0), dist(d.wrt_qc, -0.5), modulus(d.wrt_qi),
                          modulus(d.wrt_qj), modulus(d.wrt_qk), dist(d.wrt_qic, 0.5),
                          dist(d.wrt_qjc, 0.5), dist(d.wrt_qkc, 0.5)});
  ctx.record("hr_identity_q", q, std::nullopt, std::nullopt, r, kFirstOrder, 1.0);
}

void hr_conj_q(Context& ctx, Rng& rng) {
  const Quaternion q = random_point(rng);
  const DerivativeSet d = left_hr([](const Quaternion& p) { return conjugate(p); }, q);
  const double r = worst({dist(d.wrt_qc, 1.0), dist(d.wrt_q, -0.5), dist(d.wrt_qi, 0.5),
                          dist(d.wrt_qj, 0.5), dist(d.wrt_qk, 0.5)});
  ctx.record("hr_conj_q", q, std::nullopt, std::nullopt, r, kFirstOrder, 1.0);
}

void hr_square(Context& ctx, Rng& rng) {
  const Quaternion q = random_point(rng);
  const DerivativeSet d = left_hr([](const Quaternion& p) { return p * p; }, q);
  const Quaternion expected = q + real_part(q);
  ctx.record("hr_square", q, std::nullopt, std::nullopt, dist(d.wrt_q, expected), kFirstOrder,
             modulus(expected));
}

void hr_modulus_squared(Context& ctx, Rng& rng) {
  const Quaternion q = random_point(rng);
  const DerivativeSet d =
      left_hr([](const Quaternion& p) { return Quaternion(modulus_squared(p)); }, q);
  const Quaternion expected = 0.5 * conjugate(q);
  ctx.record("hr_modulus_squared", q, std::nullopt, std::nullopt, dist(d.wrt_q, expected),
             kFirstOrder, modulus(expected));
}

void ghr_mu1_reduction(Context& ctx, Rng& rng) {
  const TableEntry f = ctx.entry(rng);
  const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
  const RealPartials p = real_partials(f.function(), q);
  const GhrPair g = left_ghr(p, kOne);
  const DerivativeSet d = left_hr(p);
  const double r = std::max(dist(g.d_mu, d.wrt_q), dist(g.d_mu_conj, d.wrt_qc));
  ctx.record("ghr_mu1_reduction", q, kOne, std::nullopt, r, kExact, modulus(d.wrt_q));
}

void ghr_linear_rows(Context& ctx, Rng& rng) {
  const Quaternion q = random_point(rng);
  const Quaternion mu = random_point(rng);
  const GhrPair g = left_ghr([](const Quaternion& p) { return p; }, q, mu);
  const double r = std::max(dist(g.d_mu * mu, real_part(mu)),
                            dist(g.d_mu_conj * mu, -0.5 * conjugate(mu)));
  ctx.record("ghr_linear_rows", q, mu, std::nullopt, r, kFirstOrder, modulus(mu));
}

void product_rule(Context& ctx, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const TableEntry f = ctx.entry(rng);
    const TableEntry g = ctx.entry(rng);
    const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
    if (!admissible(g, q, kSampleMargin)) {
      continue;
    }
    const Quaternion mu = random_point(rng);
    try {
      const double r = check_product_rule(f.function(), g.function(), q, mu);
      const double scale = modulus(f(q)) * modulus(g(q)) * modulus(mu);
      ctx.record("product_rule", q, mu, std::nullopt, r, kFirstOrder, scale);
      return;
    } catch (const PreconditionError&) {
      ctx.skip("product_rule");
    }
  }
  throw DomainError("product_rule: no admissible draw");
}

void chain_rule(Context& ctx, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const TableEntry f = ctx.entry(rng);
    const TableEntry g = ctx.entry(rng);
    const Quaternion q = sample_admissible_point(g, rng, kSampleMargin);
    const Quaternion inner = g(q);
    if (modulus(inner) > kChainRange || !admissible(f, inner, kSampleMargin)) {
      continue;
    }
    const Quaternion mu = random_point(rng);
    const Quaternion nu = random_point(rng);
    try {
      const double r = check_chain_rule(f.function(), g.function(), q, mu, nu);
      const double scale = (1.0 + modulus(f(inner))) * (1.0 + modulus(inner)) * modulus(mu);
      ctx.record("chain_rule", q, mu, nu, r, kFirstOrder, scale);
      return;
    } catch (const PreconditionError&) {
      ctx.skip("chain_rule");
    }
  }
  throw DomainError("chain_rule: no admissible draw");
}

void real_chain_rule(Context& ctx, Rng& rng) {
  struct Outer {
    double (*f)(double);
    double (*df)(double);
  };
  static const std::array<Outer, 3> outers{{
      {[](double s) { return s * s; }, [](double s) { return 2.0 * s; }},
      {[](double s) { return std::sin(s); }, [](double s) { return std::cos(s); }},
      {[](double s) { return std::exp(0.5 * s); }, [](double s) { return 0.5 * std::exp(0.5 * s); }},
  }};
  const Outer& outer = outers[rng.next_u64() % outers.size()];
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const TableEntry g = ctx.entry(rng, true);
    const Quaternion q = sample_admissible_point(g, rng, kSampleMargin);
    const double inner = g(q).a;
    if (std::abs(inner) > kChainRange) {
      continue;
    }
    const Quaternion mu = random_point(rng);
    const double r = check_real_chain_rule(outer.f, outer.df, g.function(), q, mu);
    const double scale = (1.0 + std::abs(outer.df(inner))) * (1.0 + std::abs(inner)) * modulus(mu);
    ctx.record("real_chain_rule", q, mu, std::nullopt, r, kFirstOrder, scale);
    return;
  }
  throw DomainError("real_chain_rule: no admissible draw");
}

void conjugation(Context& ctx, Rng& rng) {
  const TableEntry f = ctx.entry(rng);
  const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
  const Quaternion mu = random_point(rng);
  const double r = conjugation_relation(f.function(), q, mu);
  ctx.record("conjugation_relation", q, mu, std::nullopt, r, kFirstOrder, 1.0 + modulus(f(q)));
}

void real_flavor_equality(Context& ctx, Rng& rng) {
  const TableEntry f = ctx.entry(rng, true);
  const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
  const RealPartials p = real_partials(f.function(), q);
  const DerivativeSet l = left_hr(p);
  const DerivativeSet r = right_hr(p);
  double residual = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    residual = std::max({residual, dist(l.plain()[k], r.plain()[k]),
                         dist(l.conjugates()[k], r.conjugates()[k])});
  }
  ctx.record("real_flavor_equality", q, std::nullopt, std::nullopt, residual, kRealFlavor);
}

void real_conjugate_rule(Context& ctx, Rng& rng) {
  const TableEntry f = ctx.entry(rng, true);
  const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
  const Quaternion mu = random_point(rng);
  const GhrPair g = left_ghr(f.function(), q, mu);
  ctx.record("real_conjugate_rule", q, mu, std::nullopt, dist(conjugate(g.d_mu), g.d_mu_conj),
             kRealFlavor);
}

void rotation_transport(Context& ctx, Rng& rng) {
  const TableEntry f = ctx.entry(rng);
  const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
  const Quaternion mu = random_point(rng);
  const Quaternion nu = random_point(rng);
  const QFunction fn = f.function();
  const Quaternion lhs = rotate(left_ghr(fn, q, mu).d_mu, nu);
  const QFunction rotated = [fn, nu](const Quaternion& p) { return rotate(fn(p), nu); };
  const Quaternion rhs = left_ghr(rotated, q, nu * mu).d_mu;
  ctx.record("rotation_transport", q, mu, nu, dist(lhs, rhs), kFirstOrder, 1.0 + modulus(f(q)));
}

void left_constant_rule(Context& ctx, Rng& rng) {
  const TableEntry f = ctx.entry(rng);
  const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
  const Quaternion mu = random_point(rng);
  const Quaternion nu = random_point(rng);
  const QFunction fn = f.function();
  const QFunction scaled = [fn, nu](const Quaternion& p) { return nu * fn(p); };
  const Quaternion lhs = left_ghr(scaled, q, mu).d_mu;
  const Quaternion rhs = nu * left_ghr(fn, q, mu).d_mu;
  ctx.record("left_constant_rule", q, mu, nu, dist(lhs, rhs), kFirstOrder,
             modulus(nu) * (1.0 + modulus(f(q))));
}

bool is_affine(const TableEntry& e) {
  switch (e.family()) {
    case Family::Linear:
    case Family::ConjLinear:
    case Family::RealPart:
    case Family::LinearRealPart:
    case Family::ConjLinearRealPart:
      return true;
    case Family::Power:
      return e.order() == 1;
    default:
      return false;
  }
}

void reconstruction(Context& ctx, Rng& rng) {
  TableEntry f = ctx.entry(rng);
  while (is_affine(f)) {
    f = ctx.entry(rng);
  }
  const Quaternion q = sample_admissible_point(f, rng, kSampleMargin);
  const Quaternion dq = kReconstructionStep * random_unit(rng);
  const QFunction fn = f.function();
  const std::array<Quaternion, 4> d = left_hr(fn, q).plain();
  auto error = [&](const Quaternion& step) {
    const std::array<Quaternion, 4> s = involutions(step);
    Quaternion linear;
    for (std::size_t k = 0; k < 4; ++k) {
      linear += d[k] * s[k];
    }
    return modulus(fn(q + step) - fn(q) - linear);
  };
  const double ratio = error(dq) / error(0.5 * dq);
  ctx.record("reconstruction", q, std::nullopt, std::nullopt, std::abs(ratio - 4.0),
             kReconstruction);
}

void laplacian(Context& ctx, Rng& rng) {
  const Quaternion q = random_point(rng);
  const Quaternion mu = random_point(rng);
  const SecondOrder s =
      second_order_left([](const Quaternion& p) { return Quaternion(modulus_squared(p)); }, q,
                        mu, mu);
  ctx.record("laplacian", q, mu, mu, dist(s.mu_nuc, 0.5), kSecondOrder);
}

void counter_example(Context& ctx, Rng& rng) {
  Quaternion q = random_point(rng);
  while (modulus(vector_part(q)) < 1.0) {
    q = random_point(rng);
  }
  const DerivativeSet d = left_hr([](const Quaternion& p) { return p * p; }, q);
  const double gap = dist(2.0 * q, d.wrt_q);
  const double imag = modulus(vector_part(q));
  ctx.record("counter_example", q, std::nullopt, std::nullopt, std::abs(gap - imag), kFirstOrder,
             imag, gap >= 0.5);
}

const std::vector<std::pair<std::string, Check>>& checks() {
  static const std::vector<std::pair<std::string, Check>> all{
      {"hr_identity_q", hr_identity_q},
      {"hr_conj_q", hr_conj_q},
      {"hr_square", hr_square},
      {"hr_modulus_squared", hr_modulus_squared},
      {"ghr_mu1_reduction", ghr_mu1_reduction},
      {"ghr_linear_rows", ghr_linear_rows},
      {"product_rule", product_rule},
      {"chain_rule", chain_rule},
      {"real_chain_rule", real_chain_rule},
      {"conjugation_relation", conjugation},
      {"real_flavor_equality", real_flavor_equality},
      {"real_conjugate_rule", real_conjugate_rule},
      {"rotation_transport", rotation_transport},
      {"left_constant_rule", left_constant_rule},
      {"reconstruction", reconstruction},
      {"laplacian", laplacian},
      {"counter_example", counter_example},
  };
  return all;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

std::string optional_text(const std::optional<Quaternion>& q) { return q ? to_string(*q) : ""; }

}  // namespace

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, check] : checks()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

std::size_t IdentityReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const IdentityRecord& r) { return !r.pass; }));
}

std::size_t TableReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [](const TableRecord& r) { return !r.pass; }));
}

IdentityReport run_identity_suite(const SuiteOptions& options) {
  if (options.points == 0) {
    throw ConfigError("points must be positive");
  }
  const std::vector<std::string>& names = identity_names();
  for (const auto& [name, value] : options.tolerances) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError("unknown identity '" + name + "' in tolerance override");
    }
    if (!(value >= 0.0)) {
      throw ConfigError("tolerance for '" + name + "' must be nonnegative");
    }
  }

  IdentityReport report;
  report.seed = options.seed;
  Context ctx(options, report);
  const Rng root(options.seed);
  for (std::size_t c = 0; c < checks().size(); ++c) {
    const Rng stream = root.split(c);
    for (std::size_t p = 0; p < options.points; ++p) {
      Rng rng = stream.split(p);
      checks()[c].second(ctx, rng);
    }
  }
  return report;
}

TableReport run_table_suite(std::uint64_t seed, std::size_t points) {
  if (points == 0) {
    throw ConfigError("points must be positive");
  }
  TableReport report;
  report.seed = seed;
  const Rng root(seed);
  const std::vector<TableEntry> templates = catalogue();
  for (std::size_t t = 0; t < templates.size(); ++t) {
    const Rng stream = root.split(t);
    for (std::size_t p = 0; p < points; ++p) {
      Rng rng = stream.split(p);
      const TableEntry entry = randomize(templates[t], rng);
      const Quaternion q = sample_admissible_point(entry, rng, kSampleMargin);
      const Quaternion mu = random_point(rng);
      const EntryDerivatives closed = derivative(entry, q, mu);
      const GhrPair numeric = left_ghr(entry.function(), q, mu);
      const std::string family = entry.label();
      auto add = [&](const char* column, const Quaternion& cf, const Quaternion& num) {
        const double residual = dist(cf, num);
        report.records.push_back({family, q, mu, column, cf, num, residual,
                                  residual <= kTableTolerance * (1.0 + modulus(cf))});
      };
      add("d_mu", closed.d_mu_times_mu, numeric.d_mu * mu);
      add("d_mu_conj", closed.d_mu_conj_times_mu, numeric.d_mu_conj * mu);
    }
  }
  return report;
}

void write_csv(std::ostream& out, const IdentityReport& report) {
  out << "# seed=" << report.seed << '\n';
  out << "identity,point,mu,nu,residual,tol,pass\n";
  for (const IdentityRecord& r : report.records) {
    out << r.identity << ',' << to_string(r.point) << ',' << optional_text(r.mu) << ','
        << optional_text(r.nu) << ',' << format_real(r.residual) << ',' << format_real(r.tol)
        << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

void write_csv(std::ostream& out, const TableReport& report) {
  out << "# seed=" << report.seed << '\n';
  out << "family,point,mu,column,closed_form,numerical,residual,pass\n";
  for (const TableRecord& r : report.records) {
    out << r.family << ',' << to_string(r.point) << ',' << to_string(r.mu) << ',' << r.column
        << ',' << to_string(r.closed_form) << ',' << to_string(r.numerical) << ','
        << format_real(r.residual) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace ghr
