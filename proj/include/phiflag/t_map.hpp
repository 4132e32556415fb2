// The linear map t from extension coordinates (psi, mu, c_I) onto eigenvalue
// deformations plus filtration-preserving endomorphisms, with its kernels,
// image characterizations and the subset classification.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phiflag/exterior.hpp"
#include "phiflag/phi_module.hpp"

namespace phiflag {

/// Raised when a proved identity fails on concrete data.
class InvariantFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Step indices 1..n-1.
using StepSet = std::vector<int>;
StepSet all_steps(int n);

struct TDomainVector {
  Vector psi;
  Rational mu;
  Vector c;  ///< indexed like proper_subsets(n)
};

struct TCodomainVector {
  Vector phi_part;
  Matrix fil_part;
};

/// Endomorphisms preserving every filtration step, flattened row-major into Q^{n^2}.
Subspace homfil_basis(const FilteredPhiModule& d);

/// Kernel dimension predicted for the restriction to S.
long kernel_formula_dim(int n, const StepSet& S);

class TMap {
 public:
  /// scales[k] rescales T_I for I = proper_subsets(n)[k]; empty means all ones.
  explicit TMap(FilteredPhiModule d, std::vector<Rational> scales = {});

  const FilteredPhiModule& module() const { return d_; }
  int n() const { return d_.n; }
  const std::vector<Subset>& subsets() const { return subsets_; }
  std::size_t position(const Subset& I) const;
  const Matrix& T(std::size_t k) const { return T_.at(k); }
  const Matrix& T(const Subset& I) const { return T_.at(position(I)); }
  const Rational& scale(std::size_t k) const { return scales_.at(k); }
  const LineMap& star(std::size_t k) const { return star_.at(k); }
  bool split(std::size_t k) const { return split_.at(k); }

  /// Coordinates: psi at 0..n-1, mu at n, c_I at n+1+k.
  std::size_t domain_dim() const { return static_cast<std::size_t>(n() + 1) + subsets_.size(); }
  std::size_t c_offset() const { return static_cast<std::size_t>(n() + 1); }
  /// (n + n^2) x domain_dim matrix of t.
  const Matrix& matrix() const { return matrix_; }

  TCodomainVector apply(const TDomainVector& v) const;
  TDomainVector unpack(const Vector& v) const;
  Vector pack(const TDomainVector& v) const;

  /// Kernel of t restricted to psi, mu and the c_I with |I| in S.
  Subspace kernel(const StepSet& S) const;
  /// Extension coordinates satisfying the infinitesimal conditions for S.
  Subspace inf_domain(const StepSet& S) const;

  /// {sum_{|I|=i} c_I T_I : c in U} as a subspace of Q^{n^2}.
  Subspace block_image(const Subspace& U, int i) const;
  /// {sum_{|I|=i} c_I * functional(estar_I) : c in U}, functionals on the degree n-i power.
  Subspace block_functionals(const Subspace& U, int i) const;

 private:
  FilteredPhiModule d_;
  std::vector<Subset> subsets_;
  std::vector<Rational> scales_;
  std::vector<LineMap> star_;
  std::vector<bool> split_;
  std::vector<Matrix> T_;
  Matrix matrix_;
};

/// Span of transfer_solve over a basis of the given functionals, with target fil_max(d, i).
Subspace transfer_span(const FilteredPhiModule& d, int i, const std::vector<Vector>& functionals);

struct ImageCheck {
  Subspace kernel_side;  ///< image computed from the kernel (or inf domain)
  Subspace target_side;  ///< transfers of the functionals killing the reference subspace
  Subspace kernel_functionals;
  Subspace target_functionals;
  bool holds() const { return kernel_side == target_side && kernel_functionals == target_functionals; }
};

/// Kernel image in block i against maps killing fil_2nd_max(S, i).
ImageCheck kernel_image_in_homfil(const TMap& t, const StepSet& S, int i);
/// Inf-domain image in block i against maps killing the line fil_max(i).
ImageCheck inf_image_in_homfil(const TMap& t, const StepSet& S, int i);

struct SubsetClass {
  Subset I;
  bool split = false;
  bool cosplit = false;
  bool critical = false;
  bool very_critical = false;
  // The three very-critical tests, kept for reporting.
  bool vc_crossing = false;
  bool vc_operator_zero = false;
  bool vc_coefficient = false;
  Permutation w;  ///< w_R * w_0 for the canonical refinement
  int crossing = 0;
  int pairs = 0;
};

/// Throws InvariantFailure when split and critical disagree or the three
/// very-critical tests disagree.
std::vector<SubsetClass> classify(const TMap& t);
/// cosplit relative to the steps S: e_{I^c} in fil_2nd_max(S, |I|).
bool cosplit(const FilteredPhiModule& d, const StepSet& S, const Subset& I);

/// The endomorphisms acting by a on e_{tau(0..i-1)} and by b modulo that span on
/// the remaining e_{tau(j)}.
struct HomfilR {
  Subspace space;     ///< in Q^{n^2}
  std::size_t image_rank = 0;  ///< rank of M -> (a, b)
  bool bijective() const { return space.dim() == 2 && image_rank == 2; }
};
HomfilR homfilR(const FilteredPhiModule& d, const Permutation& tau, int i);
/// (a, b) for M in homfilR; throws std::invalid_argument otherwise.
std::pair<Rational, Rational> f_i(const FilteredPhiModule& d, const Permutation& tau, int i, const Matrix& M);

/// dim(n_P ∩ Ad_w(n)): strictly upper block of the (i, n-i) parabolic against
/// the conjugate of the strictly upper triangular matrices by the permutation
/// matrix of w, computed as a subspace intersection.
std::size_t nilradical_overlap_dim(const Permutation& w, int i);

/// Sub-results of the crossing-number-one kernel test for one subset.
struct CritReport {
  bool nonzero = false;         ///< T_I != 0
  bool in_homfilR = false;      ///< T_I lies in homfilR
  bool f_zero = false;          ///< f_i(T_I) = (0, 0)
  std::size_t kernel_dim = 0;   ///< dim ker f_i on homfilR
  std::size_t overlap_dim = 0;  ///< nilradical_overlap_dim(w_R, |I|)
  bool spans = false;           ///< ker f_i = span(T_I)
  bool ok() const { return nonzero && in_homfilR && f_zero && spans; }
};
/// Throws std::invalid_argument if the crossing number is not 1.
CritReport crit_kernel_report(const TMap& t, const Subset& I);
/// Checks that T_I is nonzero, lies in homfilR, has f_i = (0,0) and spans ker f_i.
/// Throws std::invalid_argument if the crossing number is not 1.
bool crit_kernel_check(const TMap& t, const Subset& I);

}  // namespace phiflag
