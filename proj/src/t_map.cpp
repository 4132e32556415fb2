#include "phiflag/t_map.hpp"

#include <algorithm>

namespace phiflag {

namespace {

std::size_t sq(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

// Rows alpha . M v_k = 0 for every step j, annihilator alpha of step j, and k >= j.
Matrix homfil_constraints(const FilteredPhiModule& d, std::size_t extra_cols) {
  const auto un = static_cast<std::size_t>(d.n);
  Matrix A(0, un * un + extra_cols);
  for (int j = 1; j < d.n; ++j) {
    auto ann = filtration_subspace(d, j).annihilator();
    for (int k = j; k < d.n; ++k) {
      const Vector& v = d.flag[static_cast<std::size_t>(k)];
      for (const auto& alpha : ann) {
        Vector row = zero_vector(A.cols());
        for (std::size_t r = 0; r < un; ++r)
          for (std::size_t c = 0; c < un; ++c) row[r * un + c] = alpha[r] * v[c];
        A.append_row(row);
      }
    }
  }
  return A;
}

bool contains_sorted(const StepSet& S, int x) { return std::find(S.begin(), S.end(), x) != S.end(); }

Subspace project(const Subspace& U, std::size_t from, std::size_t count) {
  std::vector<Vector> out;
  for (const auto& v : U.vectors()) out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(from),
                                                      v.begin() + static_cast<std::ptrdiff_t>(from + count));
  return Subspace::span(count, out);
}

}  // namespace

StepSet all_steps(int n) {
  StepSet s;
  for (int i = 1; i < n; ++i) s.push_back(i);
  return s;
}

Subspace homfil_basis(const FilteredPhiModule& d) {
  require_valid(d);
  Matrix A = homfil_constraints(d, 0);
  if (A.rows() == 0) return Subspace::full(sq(d.n));
  return phiflag::kernel(A);
}

long kernel_formula_dim(int n, const StepSet& S) {
  StepSet cuts = S;
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  long binoms = 0;
  for (int i : cuts) {
    long b = 1;
    for (int k = 1; k <= i; ++k) b = b * (n - i + k) / k;
    binoms += b;
  }
  long blocks_sq = 0;
  int prev = 0;
  for (int c : cuts) {
    blocks_sq += static_cast<long>(c - prev) * (c - prev);
    prev = c;
  }
  blocks_sq += static_cast<long>(n - prev) * (n - prev);
  long k = static_cast<long>(cuts.size()) + 1;
  long dim_r = k + (static_cast<long>(n) * n - blocks_sq) / 2;
  return binoms + 1 - dim_r;
}

TMap::TMap(FilteredPhiModule d, std::vector<Rational> scales) : d_(std::move(d)), subsets_(proper_subsets(d_.n)) {
  require_valid(d_);
  scales_ = scales.empty() ? std::vector<Rational>(subsets_.size(), Rational(1)) : std::move(scales);
  if (scales_.size() != subsets_.size()) throw std::invalid_argument("one scale per subset expected");
  for (const auto& s : scales_)
    if (s == 0) throw std::invalid_argument("scales must be nonzero");
  const int n = d_.n;
  for (std::size_t k = 0; k < subsets_.size(); ++k) {
    const Subset& I = subsets_[k];
    const int i = static_cast<int>(I.size());
    star_.push_back(estar(d_, I, scales_[k]));
    split_.push_back(fil_max(d_, i).coeff(complement(n, I)) == 0);
  }
  // One elimination per size |I|; subsets come grouped by size.
  for (std::size_t k = 0; k < subsets_.size();) {
    const int i = static_cast<int>(subsets_[k].size());
    std::size_t end = k;
    while (end < subsets_.size() && static_cast<int>(subsets_[end].size()) == i) ++end;
    std::vector<LineMap> maps(star_.begin() + static_cast<long>(k), star_.begin() + static_cast<long>(end));
    for (auto& f : transfer_solve_many(d_, i, maps)) T_.push_back(std::move(f));
    k = end;
  }
  const auto un = static_cast<std::size_t>(n);
  matrix_ = Matrix(un + un * un, domain_dim());
  for (std::size_t r = 0; r < un; ++r) matrix_.at(r, r) = 1;
  for (std::size_t r = 0; r < un; ++r) matrix_.at(un + r * un + r, un) = 1;
  for (std::size_t k = 0; k < subsets_.size(); ++k) {
    const auto& flat = T_[k].flat();
    for (std::size_t e = 0; e < flat.size(); ++e) matrix_.at(un + e, c_offset() + k) = flat[e];
  }
}

std::size_t TMap::position(const Subset& I) const {
  auto it = std::find(subsets_.begin(), subsets_.end(), I);
  if (it == subsets_.end()) throw std::invalid_argument("not a proper subset: " + subset_str(I));
  return static_cast<std::size_t>(it - subsets_.begin());
}

Vector TMap::pack(const TDomainVector& v) const {
  if (v.psi.size() != static_cast<std::size_t>(n()) || v.c.size() != subsets_.size())
    throw std::invalid_argument("domain vector shape mismatch");
  Vector out = v.psi;
  out.push_back(v.mu);
  out.insert(out.end(), v.c.begin(), v.c.end());
  return out;
}

TDomainVector TMap::unpack(const Vector& v) const {
  if (v.size() != domain_dim()) throw std::invalid_argument("domain vector shape mismatch");
  const auto un = static_cast<std::size_t>(n());
  return TDomainVector{Vector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(un)), v[un],
                       Vector(v.begin() + static_cast<std::ptrdiff_t>(c_offset()), v.end())};
}

TCodomainVector TMap::apply(const TDomainVector& v) const {
  Vector out = matrix_ * pack(v);
  const auto un = static_cast<std::size_t>(n());
  return TCodomainVector{Vector(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(un)),
                         Matrix::from_flat(un, un, Vector(out.begin() + static_cast<std::ptrdiff_t>(un), out.end()))};
}

Subspace TMap::kernel(const StepSet& S) const {
  Matrix A = matrix_;
  for (std::size_t k = 0; k < subsets_.size(); ++k)
    if (!contains_sorted(S, static_cast<int>(subsets_[k].size()))) A.append_row(unit_vector(domain_dim(), c_offset() + k));
  return phiflag::kernel(A);
}

Subspace TMap::inf_domain(const StepSet& S) const {
  Matrix A(0, domain_dim());
  for (std::size_t r = 0; r <= static_cast<std::size_t>(n()); ++r) A.append_row(unit_vector(domain_dim(), r));
  for (std::size_t k = 0; k < subsets_.size(); ++k)
    if (!contains_sorted(S, static_cast<int>(subsets_[k].size()))) A.append_row(unit_vector(domain_dim(), c_offset() + k));
  for (int j : S) {
    Vector row = zero_vector(domain_dim());
    for (std::size_t k = 0; k < subsets_.size(); ++k)
      if (static_cast<int>(subsets_[k].size()) == j && !split_[k]) row[c_offset() + k] = scales_[k];
    if (!is_zero(row)) A.append_row(row);
  }
  return phiflag::kernel(A);
}

Subspace TMap::block_image(const Subspace& U, int i) const {
  std::vector<Vector> out;
  for (const auto& v : U.vectors()) {
    Vector m = zero_vector(sq(n()));
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      const Rational& c = v[c_offset() + k];
      if (static_cast<int>(subsets_[k].size()) != i || c == 0) continue;
      const auto& flat = T_[k].flat();
      for (std::size_t e = 0; e < flat.size(); ++e) m[e] += c * flat[e];
    }
    out.push_back(m);
  }
  return Subspace::span(sq(n()), out);
}

Subspace TMap::block_functionals(const Subspace& U, int i) const {
  const std::size_t dim = wedge_basis(n(), n() - i).size();
  std::vector<Vector> out;
  for (const auto& v : U.vectors()) {
    Vector g = zero_vector(dim);
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
      const Rational& c = v[c_offset() + k];
      if (static_cast<int>(subsets_[k].size()) != i || c == 0) continue;
      for (std::size_t e = 0; e < dim; ++e) g[e] += c * star_[k].functional[e];
    }
    out.push_back(g);
  }
  return Subspace::span(dim, out);
}

Subspace transfer_span(const FilteredPhiModule& d, int i, const std::vector<Vector>& functionals) {
  WedgeVector line = fil_max(d, i);
  std::vector<LineMap> maps;
  for (const auto& g : functionals) maps.push_back(LineMap{line, g});
  std::vector<Vector> out;
  if (!maps.empty())
    for (const auto& f : transfer_solve_many(d, i, maps)) out.push_back(f.flat());
  return Subspace::span(sq(d.n), out);
}

ImageCheck kernel_image_in_homfil(const TMap& t, const StepSet& S, int i) {
  Subspace K = t.kernel(S);
  Subspace second = fil_2nd_max(t.module(), S, i);
  auto ann = second.annihilator();
  return ImageCheck{t.block_image(K, i), transfer_span(t.module(), i, ann), t.block_functionals(K, i),
                    Subspace::span(second.ambient(), ann)};
}

ImageCheck inf_image_in_homfil(const TMap& t, const StepSet& S, int i) {
  Subspace U = t.inf_domain(S);
  WedgeVector line = fil_max(t.module(), i);
  Subspace L = Subspace::span(line.coords.size(), {line.coords});
  auto ann = L.annihilator();
  return ImageCheck{t.block_image(U, i), transfer_span(t.module(), i, ann), t.block_functionals(U, i),
                    Subspace::span(L.ambient(), ann)};
}

bool cosplit(const FilteredPhiModule& d, const StepSet& S, const Subset& I) {
  const int i = static_cast<int>(I.size());
  return fil_2nd_max(d, S, i).contains(basis_wedge(d.n, complement(d.n, I)).coords);
}

std::vector<SubsetClass> classify(const TMap& t) {
  const FilteredPhiModule& d = t.module();
  const int n = d.n;
  const Permutation w0 = Permutation::longest(n);
  std::vector<SubsetClass> out;
  for (std::size_t k = 0; k < t.subsets().size(); ++k) {
    SubsetClass c;
    c.I = t.subsets()[k];
    const int i = static_cast<int>(c.I.size());
    const Subset Ic = complement(n, c.I);
    c.split = t.split(k);
    c.cosplit = cosplit(d, all_steps(n), c.I);
    c.w = relative_position(d, canonical_refinement(n, c.I)) * w0;
    c.critical = in_support(c.w, i);
    c.crossing = crossing_number(c.w, i);
    c.pairs = pair_count(c.w, i);
    c.vc_crossing = c.crossing >= 2;
    c.vc_operator_zero = t.T(k).is_zero();

    // Coefficient of e_{I^c} on every x ^ e_r with x a wedge of n-i-1 vectors of step i.
    c.vc_coefficient = true;
    std::vector<Vector> tail(d.flag.begin() + i, d.flag.end());
    for (const auto& pick : subsets_of_size(n - i, n - i - 1)) {
      std::vector<Vector> xs;
      for (int a : pick) xs.push_back(tail[static_cast<std::size_t>(a)]);
      WedgeVector x = wedge(n, xs);
      for (int r = 0; r < n; ++r)
        if (wedge_product(x, basis_wedge(n, {r})).coeff(Ic) != 0) c.vc_coefficient = false;
    }
    c.very_critical = c.vc_crossing;
    if (c.split != c.critical)
      throw InvariantFailure("split and critical disagree for " + subset_str(c.I));
    if (c.vc_crossing != c.vc_operator_zero || c.vc_crossing != c.vc_coefficient)
      throw InvariantFailure("very-critical criteria disagree for " + subset_str(c.I));
    if (c.very_critical && !c.split) throw InvariantFailure("very critical subset is not split: " + subset_str(c.I));
    out.push_back(c);
  }
  return out;
}

namespace {

// Constraint matrix on (M flat, a, b).
Matrix homfilR_constraints(const FilteredPhiModule& d, const Permutation& tau, int i) {
  const int n = d.n;
  const auto un = static_cast<std::size_t>(n);
  const std::size_t a_col = un * un, b_col = un * un + 1;
  Matrix A = homfil_constraints(d, 2);
  std::vector<bool> head(un, false);
  for (int j = 0; j < i; ++j) head[static_cast<std::size_t>(tau(j))] = true;
  for (int j = 0; j < n; ++j) {
    const auto col = static_cast<std::size_t>(tau(j));
    for (std::size_t r = 0; r < un; ++r) {
      if (j >= i && head[r]) continue;
      Vector row = zero_vector(A.cols());
      row[r * un + col] = 1;
      if (r == col) row[j < i ? a_col : b_col] = -1;
      A.append_row(row);
    }
  }
  return A;
}

}  // namespace

HomfilR homfilR(const FilteredPhiModule& d, const Permutation& tau, int i) {
  require_valid(d);
  if (i < 1 || i > d.n - 1) throw std::invalid_argument("homfilR index out of range");
  Subspace K = phiflag::kernel(homfilR_constraints(d, tau, i));
  return HomfilR{project(K, 0, sq(d.n)), project(K, sq(d.n), 2).dim()};
}

std::pair<Rational, Rational> f_i(const FilteredPhiModule& d, const Permutation& tau, int i, const Matrix& M) {
  if (!homfilR(d, tau, i).space.contains(M.flat())) throw std::invalid_argument("matrix outside homfilR");
  return {M.at(static_cast<std::size_t>(tau(0)), static_cast<std::size_t>(tau(0))),
          M.at(static_cast<std::size_t>(tau(i)), static_cast<std::size_t>(tau(i)))};
}

std::size_t nilradical_overlap_dim(const Permutation& w, int i) {
  const int n = w.size();
  if (i < 1 || i > n - 1) throw std::invalid_argument("nilradical index out of range");
  const auto un = static_cast<std::size_t>(n);
  auto unit = [&](int r, int c) { return unit_vector(un * un, static_cast<std::size_t>(r) * un + static_cast<std::size_t>(c)); };
  std::vector<Vector> nil, conj;
  for (int r = 0; r < i; ++r)
    for (int c = i; c < n; ++c) nil.push_back(unit(r, c));
  // P_w E_{rc} P_w^{-1} = E_{w(r) w(c)}
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c) conj.push_back(unit(w(r), w(c)));
  return intersect(Subspace::span(un * un, nil), Subspace::span(un * un, conj)).dim();
}

CritReport crit_kernel_report(const TMap& t, const Subset& I) {
  const FilteredPhiModule& d = t.module();
  const int n = d.n;
  const int i = static_cast<int>(I.size());
  const Permutation tau = canonical_refinement(n, I);
  const Permutation wR = relative_position(d, tau);
  if (crossing_number(wR * Permutation::longest(n), i) != 1)
    throw std::invalid_argument("crit_kernel_check needs crossing number 1");
  CritReport rep;
  rep.overlap_dim = nilradical_overlap_dim(wR, i);
  const Matrix& T = t.T(I);
  rep.nonzero = !T.is_zero();
  HomfilR R = homfilR(d, tau, i);
  rep.in_homfilR = R.space.contains(T.flat());
  if (rep.in_homfilR) {
    auto ab = f_i(d, tau, i, T);
    rep.f_zero = ab.first == 0 && ab.second == 0;
  }
  Matrix A = homfilR_constraints(d, tau, i);
  A.append_row(unit_vector(A.cols(), sq(n)));
  A.append_row(unit_vector(A.cols(), sq(n) + 1));
  Subspace ker_f = project(phiflag::kernel(A), 0, sq(n));
  rep.kernel_dim = ker_f.dim();
  rep.spans = rep.nonzero && ker_f == Subspace::span(sq(n), {T.flat()});
  return rep;
}

bool crit_kernel_check(const TMap& t, const Subset& I) { return crit_kernel_report(t, I).ok(); }

}  // namespace phiflag
