#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ghr/errors.hpp"
#include "ghr/suite.hpp"
#include "ghr/table.hpp"

namespace ghr {
namespace {

TEST(IdentitySuite, DefaultRunPasses) {
  const IdentityReport report = run_identity_suite({});
  EXPECT_GE(report.records.size(), 500u);
  EXPECT_TRUE(report.all_pass());
  std::set<std::string> seen;
  for (const IdentityRecord& r : report.records) {
    seen.insert(r.identity);
  }
  EXPECT_EQ(seen.size(), identity_names().size());
}

TEST(IdentitySuite, TightOverrideFailsOnlyThatIdentity) {
  SuiteOptions options;
  options.points = 10;
  options.tolerances["product_rule"] = 1e-15;
  const IdentityReport report = run_identity_suite(options);
  EXPECT_FALSE(report.all_pass());
  for (const IdentityRecord& r : report.records) {
    if (!r.pass) {
      EXPECT_EQ(r.identity, "product_rule");
      EXPECT_EQ(r.tol, 1e-15);
    }
  }
}

TEST(IdentitySuite, Validation) {
  SuiteOptions options;
  options.points = 0;
  EXPECT_THROW(run_identity_suite(options), ConfigError);
  options.points = 1;
  options.tolerances["no_such_identity"] = 1.0;
  EXPECT_THROW(run_identity_suite(options), ConfigError);
}

TEST(IdentitySuite, CsvIsDeterministic) {
  SuiteOptions options;
  options.points = 3;
  options.seed = 77;
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_identity_suite(options));
  write_csv(b, run_identity_suite(options));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("# seed=77\nidentity,point,mu,nu,residual,tol,pass\n", 0), 0u);
}

TEST(TableSuite, EveryFamilyPasses) {
  const TableReport report = run_table_suite(1);
  EXPECT_EQ(report.records.size(), catalogue().size() * kDefaultTablePoints * 2);
  EXPECT_TRUE(report.all_pass());
  std::set<std::string> families;
  for (const TableRecord& r : report.records) {
    families.insert(r.family.substr(0, r.family.find('(')));
  }
  EXPECT_EQ(families.size(), catalogue().size());
  std::ostringstream out;
  write_csv(out, report);
  EXPECT_NE(out.str().find("family,point,mu,column,closed_form,numerical,residual,pass\n"),
            std::string::npos);
  EXPECT_THROW(run_table_suite(1, 0), ConfigError);
}

}  // namespace
}  // namespace ghr
