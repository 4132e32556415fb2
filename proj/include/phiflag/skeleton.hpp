// Finite symbolic shapes of the representations attached to a module: which
// constituents sit in the socle, the middle layer and the cosocle, how many
// locally algebraic copies sit on top, and which pieces split off.
#pragma once

#include <string>
#include <vector>

#include "phiflag/t_map.hpp"

namespace phiflag {

struct Constituent {
  bool alg = true;
  Subset I;       ///< meaningful when !alg
  int sigma = 0;  ///< embedding tag for aggregates
  std::string label() const;
  friend bool operator==(const Constituent& a, const Constituent& b) {
    return a.alg == b.alg && a.I == b.I && a.sigma == b.sigma;
  }
  friend bool operator<(const Constituent& a, const Constituent& b);
};

struct PiSkeleton {
  int n = 0;
  StepSet S;
  bool flat = false;
  std::vector<Constituent> socle;
  std::vector<Constituent> middle_nonsplit;
  long top_alg_multiplicity = 0;
  std::vector<Subset> very_critical_summands;
  std::vector<Constituent> cosocle;  ///< C constituents; ALG appears top_alg_multiplicity times
  /// Indecomposable coordinate blocks of the kernel (subsets grouped together).
  std::vector<std::vector<Subset>> kernel_blocks;

  std::string diagram() const;
  friend bool operator==(const PiSkeleton& a, const PiSkeleton& b);
};

PiSkeleton build_pi(const TMap& t);
PiSkeleton build_pi_S(const TMap& t, const StepSet& S);
PiSkeleton build_pi_flat(const TMap& t);
bool skeleton_equal(const PiSkeleton& a, const PiSkeleton& b);

/// Finest partition of the coordinates in the support of U such that U is the
/// direct sum of its intersections with the coordinate blocks. Each block is a
/// sorted list of coordinate indices. Throws InvariantFailure if reassembly fails.
std::vector<std::vector<std::size_t>> decompose_by_support(const Subspace& U);

struct ExtDims {
  long n = 0;
  std::vector<long> per_embedding;  ///< n + dim homfil for each module
  long aggregate_closed = 0;         ///< n + d n(n+1)/2
  long aggregate_assembled = 0;      ///< sum of per-embedding counts minus (d-1) n
  bool consistent() const;
};
/// All modules must share n, p, f and eigenvalues.
ExtDims ext_dims(const std::vector<FilteredPhiModule>& modules);

}  // namespace phiflag
