// Recovery of filtration steps from spaces of endomorphisms built out of
// kernel data.
#pragma once

#include <vector>

#include "phiflag/t_map.hpp"

namespace phiflag {

struct RecoveryInput {
  int n = 0;
  std::vector<long> weights;
  std::vector<Rational> eigenvalues;
  StepSet S;                 ///< sorted, nonempty
  std::vector<Subspace> U;   ///< U[j] for the chain member {i_1..i_j, i_m}, j = 0..m-1
  Subspace U_inf;            ///< block i_m of the infinitesimal domain
};

struct HomRecovery {
  Subspace A;  ///< common kernel
  Subspace B;  ///< sum of images
};

RecoveryInput build_recovery_input(const TMap& t, const StepSet& S);

/// For U = Hom(D/A, B) returns (A, B). Throws std::invalid_argument if U = 0.
HomRecovery recover_from_hom(int n, const Subspace& U);

/// Steps indexed like input.S. Throws InvariantFailure if the output is not a
/// chain with the expected dimensions.
std::vector<Subspace> recover_filtration(const RecoveryInput& input);

/// Hom(D/A, B) as a subspace of Q^{n^2}.
Subspace hom_quotient(int n, const Subspace& A, const Subspace& B);

struct RoundtripReport {
  bool identities_hold = false;  ///< each U equals the predicted Hom space
  bool recovered = false;        ///< recovered steps equal the module's steps
  bool ok() const { return identities_hold && recovered; }
};
RoundtripReport roundtrip(const TMap& t, const StepSet& S);

}  // namespace phiflag
