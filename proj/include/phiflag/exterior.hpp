// Exterior powers of Q^n with the basis e_J, J a sorted subset, listed lexicographically.
#pragma once

#include <vector>

#include "phiflag/linalg.hpp"
#include "phiflag/phi_module.hpp"

namespace phiflag {

struct WedgeVector {
  int n = 0;
  int degree = 0;
  Vector coords;  ///< one entry per k-subset in lexicographic order

  const Rational& coeff(const Subset& J) const;
  bool is_zero() const { return phiflag::is_zero(coords); }
  friend bool operator==(const WedgeVector& a, const WedgeVector& b) {
    return a.n == b.n && a.degree == b.degree && a.coords == b.coords;
  }
};

/// Lexicographic list of the k-subsets of {0..n-1}; cached.
const std::vector<Subset>& wedge_basis(int n, int k);
/// Position of J in wedge_basis(n, |J|).
std::size_t wedge_index(int n, const Subset& J);

WedgeVector basis_wedge(int n, const Subset& J);
WedgeVector wedge_product(const WedgeVector& x, const WedgeVector& y);
/// v_1 ^ ... ^ v_k; the empty wedge is the scalar 1 in degree 0.
WedgeVector wedge(int n, const std::vector<Vector>& vectors);
/// Coefficient of e_{0..n-1} in x ^ y.
Rational wedge_pairing(const WedgeVector& x, const WedgeVector& y);

/// Plucker vector of the i-th filtration step: v_i ^ ... ^ v_{n-1}.
WedgeVector fil_max(const FilteredPhiModule& d, int i);

/// One factor (^count space) of a product of exterior powers.
struct WedgeFactor {
  Subspace space;
  int count;
};
/// Span of all wedges of basis tuples of the factors, as a subspace of the
/// degree-(sum of counts) exterior power.
Subspace wedge_span(int n, const std::vector<WedgeFactor>& factors);

/// Second-to-last step of the filtration that the steps indexed by S induce on
/// the exterior power of degree n - i. S is a set of indices in 1..n-1 containing i.
Subspace fil_2nd_max(const FilteredPhiModule& d, const std::vector<int>& S, int i);
/// Closed-form dimension of fil_2nd_max.
std::size_t fil_2nd_max_dim(int n, const std::vector<int>& S, int i);

/// A linear map from the degree-k exterior power onto a fixed line:
/// w -> (functional . coords(w)) * target.
struct LineMap {
  WedgeVector target;
  Vector functional;
  WedgeVector apply(const WedgeVector& w) const;
};

/// Coordinate functional normalized to 1 on the Plucker line when the e_{I^c}
/// coefficient is nonzero, otherwise the unnormalized coordinate. The optional
/// scale multiplies the functional.
LineMap estar(const FilteredPhiModule& d, const Subset& I, const Rational& scale = 1);

/// The unique f : D -> Fil_i, scalar on Fil_i, with x ^ f(d) = F(x ^ d) for x in
/// the wedges of (n-i-1) flag vectors of Fil_i and every basis vector d. Throws
/// std::logic_error if the system is inconsistent or not uniquely solvable.
Matrix transfer_solve(const FilteredPhiModule& d, int i, const LineMap& F);
/// transfer_solve for several maps sharing one elimination.
std::vector<Matrix> transfer_solve_many(const FilteredPhiModule& d, int i, const std::vector<LineMap>& maps);

}  // namespace phiflag
