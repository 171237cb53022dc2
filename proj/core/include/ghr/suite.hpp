#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ghr/quaternion.hpp"

namespace ghr {

struct IdentityRecord {
  std::string identity;
  Quaternion point;
  std::optional<Quaternion> mu;
  std::optional<Quaternion> nu;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

inline constexpr std::size_t kDefaultIdentityPoints = 40;
inline constexpr std::size_t kDefaultTablePoints = 50;

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t points = kDefaultIdentityPoints;
  // identity name -> absolute tolerance, replacing the built-in one
  std::map<std::string, double> tolerances;
};

struct IdentityReport {
  std::vector<IdentityRecord> records;
  std::map<std::string, std::size_t> skipped;  // degenerate axes per identity
  std::uint64_t seed = 0;

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
};

// Names accepted by SuiteOptions::tolerances.
const std::vector<std::string>& identity_names();

// Throws ConfigError for points = 0 or an unknown tolerance name.
IdentityReport run_identity_suite(const SuiteOptions& options);

struct TableRecord {
  std::string family;
  Quaternion point;
  Quaternion mu;
  std::string column;  // "d_mu" or "d_mu_conj"
  Quaternion closed_form;
  Quaternion numerical;  // numerical left GHR derivative times mu
  double residual = 0.0;
  bool pass = false;
};

struct TableReport {
  std::vector<TableRecord> records;
  std::uint64_t seed = 0;

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
};

// Pass when |closed_form - numerical| <= 1e-5 (1 + |closed_form|).
inline constexpr double kTableTolerance = 1e-5;

TableReport run_table_suite(std::uint64_t seed, std::size_t points = kDefaultTablePoints);

// CSV with a leading "# seed=<seed>" line.
void write_csv(std::ostream& out, const IdentityReport& report);
void write_csv(std::ostream& out, const TableReport& report);

}  // namespace ghr
