// Invariant suite run by the `check` command.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phiflag/phi_module.hpp"

namespace phiflag {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CheckOptions {
  bool refinements = true;  ///< sweep every compatible refinement
  bool all_tau = true;      ///< sweep every refinement in the homfilR test
  std::uint64_t seed = 0;   ///< drives the random rescalings
};

/// Every per-instance invariant; exceptions inside a check become failures.
std::vector<CheckResult> check_module(const FilteredPhiModule& d, const CheckOptions& opt = {});
/// Exhaustive Coxeter invariants over S_n.
std::vector<CheckResult> check_coxeter(int n);
/// Counting formulas over d = 1..max_d embeddings sharing the eigenvalues of d.
std::vector<CheckResult> check_ext_dims(const FilteredPhiModule& d, int max_d, std::uint64_t seed);

}  // namespace phiflag
