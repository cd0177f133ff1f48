#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qdisc::verify {

// Qubits an operator reads, writes and borrows.
struct Counts {
  int input = 0;
  int output = 0;
  int aux = 0;
  bool operator==(const Counts&) const = default;
};

std::string to_string(const Counts& c);

enum class LedgerStatus { match, documented_deviation, mismatch };

const char* to_string(LedgerStatus status);

struct LedgerRow {
  std::string op;           // builder name
  std::string table_label;  // row label in the operator resource table
  Counts table;             // counts the table gives at this n
  Counts declared;          // counts read off the builder's register layout
  // Counts the implementation is known to use where it differs from the
  // table; equal to `table` for rows that must match exactly.
  Counts pinned;
  std::string note;
  LedgerStatus status = LedgerStatus::mismatch;
};

// One row per table operator plus the circle footprint, all at width n.
std::vector<LedgerRow> resource_ledger(int n);

// per_basis runs every valid input as its own basis state. batched runs one
// superposition of all inputs with random phases and checks every branch.
enum class Strategy { per_basis, batched };

const char* to_string(Strategy s);

struct OperatorResult {
  std::string name;
  std::string table_label;
  std::uint64_t cases = 0;
  std::uint64_t inputs = 0;
  Strategy strategy = Strategy::per_basis;
  // Smallest weight found on the expected output over all inputs.
  double worst_weight = 1.0;
  bool passed = true;
  std::string first_failure;
};

struct ReversibilityResult {
  std::string name;
  int n = 0;
  int num_qubits = 0;
  double worst_fidelity = 1.0;
  bool passed = true;
};

struct VerifyOptions {
  int n = 3;
  // Corrupts one phase gate of the named operator's circuits.
  std::optional<std::string> mutate;
  // Defaults to per_basis up to n = 3 and batched above.
  std::optional<Strategy> strategy;
  bool reversibility = true;
  int reversibility_trials = 100;
  // Reversibility hosts are kept at or below this many qubits by lowering n.
  int reversibility_max_qubits = 16;
  std::uint64_t seed = 1;
};

struct VerifyReport {
  int n = 0;
  std::vector<OperatorResult> operators;
  std::vector<LedgerRow> ledger;
  std::vector<ReversibilityResult> reversibility;

  bool passed() const;
  std::string format() const;
};

inline constexpr int kMaxVerifyBits = 4;

// Names of the checked operators, in report order.
const std::vector<std::string>& operator_names();

// Throws CapacityError unless 1 <= n <= kMaxVerifyBits and UsageError for an
// unknown mutation target.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace qdisc::verify
