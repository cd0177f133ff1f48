#include <gtest/gtest.h>

#include <algorithm>

#include "qdisc/errors.hpp"
#include "qdisc/verify/verify.hpp"

using namespace qdisc;
using namespace qdisc::verify;

TEST(ResourceLedger, NoMismatchAtAnyWidth) {
  for (int n = 1; n <= 6; ++n)
    for (const auto& row : resource_ledger(n)) EXPECT_NE(row.status, LedgerStatus::mismatch) << row.op << " n=" << n;
}

TEST(ResourceLedger, ExactRowsMatchTable) {
  const auto rows = resource_ledger(4);
  for (const char* op : {"interval_check", "threshold_compare", "negate_mod", "mult_const_outplace",
                         "add_const_inplace", "add_square_inplace"}) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const LedgerRow& r) { return r.op == op; });
    ASSERT_NE(it, rows.end()) << op;
    EXPECT_EQ(it->status, LedgerStatus::match) << op;
  }
  auto circle = std::find_if(rows.begin(), rows.end(), [](const LedgerRow& r) { return r.op == "circle_exclusion"; });
  ASSERT_NE(circle, rows.end());
  EXPECT_EQ(circle->declared.input, 5 * 4 + 1);
}

TEST(RunVerify, SmallWidthPasses) {
  const auto report = run_verify({.n = 2, .reversibility_trials = 5});
  EXPECT_TRUE(report.passed()) << report.format();
  EXPECT_EQ(report.operators.size(), operator_names().size());
  EXPECT_EQ(report.operators.size(), 12u);
}

TEST(RunVerify, BatchedAgreesWithPerBasis) {
  const auto report = run_verify({.n = 2, .strategy = Strategy::batched, .reversibility = false});
  EXPECT_TRUE(report.passed()) << report.format();
}

TEST(RunVerify, MutationIsCaughtAndNamed) {
  for (auto strategy : {Strategy::per_basis, Strategy::batched}) {
    const auto report =
        run_verify({.n = 2, .mutate = "add_const_inplace", .strategy = strategy, .reversibility = false});
    EXPECT_FALSE(report.passed());
    for (const auto& op : report.operators) EXPECT_EQ(op.passed, op.name != "add_const_inplace") << op.name;
    EXPECT_NE(report.format().find("FAIL add_const_inplace"), std::string::npos);
  }
}

TEST(RunVerify, RejectsWideGridsAndUnknownTargets) {
  EXPECT_THROW(run_verify({.n = 10}), CapacityError);
  EXPECT_THROW(run_verify({.n = 0}), CapacityError);
  EXPECT_THROW(run_verify({.n = 2, .mutate = "no_such_op"}), UsageError);
}

TEST(RunVerify, ReversibilityCoversOracles) {
  const auto report = run_verify({.n = 2, .reversibility_trials = 3});
  for (const char* name : {"circle_exclusion", "polygon_inclusion", "feasibility_phase_oracle"}) {
    auto it = std::find_if(report.reversibility.begin(), report.reversibility.end(),
                           [&](const ReversibilityResult& r) { return r.name == name; });
    ASSERT_NE(it, report.reversibility.end()) << name;
    EXPECT_TRUE(it->passed);
    EXPECT_LE(it->num_qubits, 16);
  }
}
