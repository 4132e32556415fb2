// Filtered modules with a diagonal Frobenius: eigenvalues, Hodge weights and a
// full flag written in the eigenbasis e_0..e_{n-1}.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phiflag/coxeter.hpp"
#include "phiflag/linalg.hpp"

namespace phiflag {

/// Sorted subset of {0..n-1}.
using Subset = std::vector<int>;

/// Every subset with 1 <= |I| <= n-1, ordered by size and then lexicographically.
std::vector<Subset> proper_subsets(int n);
std::vector<Subset> subsets_of_size(int n, int k);
Subset complement(int n, const Subset& s);
std::string subset_str(const Subset& s);

struct FilteredPhiModule {
  int n = 0;
  long p = 2;
  int f = 1;
  std::vector<Rational> eigenvalues;
  std::vector<long> weights;
  /// flag[j] = v_j; the j-th filtration step is span(v_j, ..., v_{n-1}).
  std::vector<Vector> flag;
};

/// Every violated condition, in a fixed order; empty means valid.
std::vector<std::string> validate(const FilteredPhiModule& d);
/// Throws std::invalid_argument listing the violations.
void require_valid(const FilteredPhiModule& d);

Subspace filtration_subspace(const FilteredPhiModule& d, int j);

/// I in increasing order followed by the complement in increasing order.
Permutation canonical_refinement(int n, const Subset& I);
/// True iff tau lists the members of I first.
bool compatible(const Permutation& tau, const Subset& I);
/// All refinements compatible with I.
std::vector<Permutation> compatible_refinements(int n, const Subset& I);

/// Bruhat cell of the Hodge flag relative to the eigenvector flag ordered by tau.
Permutation relative_position(const FilteredPhiModule& d, const Permutation& tau);

enum class FlagMode { generic, permutation, mixed };

/// Deterministic pseudorandom valid module. Generic mode retries until every
/// Plucker coordinate of every flag step is nonzero.
FilteredPhiModule random_module(int n, long p, int f, std::uint64_t seed, FlagMode mode);
/// Module with eigenvalues drawn from the seed and the given flag.
FilteredPhiModule module_with_flag(int n, long p, int f, std::uint64_t seed, const std::vector<Vector>& flag);
/// v_j = e_{pi(j)}.
std::vector<Vector> permutation_flag(const Permutation& pi);

/// Copy with v_j replaced by scale[j] * v_j.
FilteredPhiModule rescale_flag(const FilteredPhiModule& d, const std::vector<Rational>& scale);
/// Copy expressed in the basis e'_k = scale[k] * e_k.
FilteredPhiModule rescale_eigenbasis(const FilteredPhiModule& d, const std::vector<Rational>& scale);

}  // namespace phiflag
