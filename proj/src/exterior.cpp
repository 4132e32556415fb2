#include "phiflag/exterior.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace phiflag {

namespace {

unsigned mask_of(const Subset& J) {
  unsigned m = 0;
  for (int x : J) m |= 1u << x;
  return m;
}

struct BasisTable {
  std::vector<Subset> subsets;
  std::map<unsigned, std::size_t> index;
};

const BasisTable& table(int n, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, BasisTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, k});
  if (it != cache.end()) return it->second;
  BasisTable t;
  t.subsets = subsets_of_size(n, k);
  for (std::size_t a = 0; a < t.subsets.size(); ++a) t.index[mask_of(t.subsets[a])] = a;
  return cache.emplace(std::make_pair(n, k), std::move(t)).first->second;
}

WedgeVector zero_wedge(int n, int k) {
  return WedgeVector{n, k, zero_vector(wedge_basis(n, k).size())};
}

// Sign of e_J ^ e_K relative to e_{J u K}: parity of pairs a in J, b in K with a > b.
int shuffle_sign(const Subset& J, const Subset& K) {
  int inv = 0;
  for (int a : J)
    for (int b : K)
      if (a > b) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

const std::vector<Subset>& wedge_basis(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("wedge degree out of range");
  return table(n, k).subsets;
}

std::size_t wedge_index(int n, const Subset& J) {
  return table(n, static_cast<int>(J.size())).index.at(mask_of(J));
}

const Rational& WedgeVector::coeff(const Subset& J) const {
  if (static_cast<int>(J.size()) != degree) throw std::invalid_argument("subset size differs from degree");
  return coords.at(wedge_index(n, J));
}

WedgeVector basis_wedge(int n, const Subset& J) {
  WedgeVector w = zero_wedge(n, static_cast<int>(J.size()));
  w.coords[wedge_index(n, J)] = 1;
  return w;
}

WedgeVector wedge_product(const WedgeVector& x, const WedgeVector& y) {
  if (x.n != y.n) throw std::invalid_argument("wedge of different ambient dimensions");
  const int n = x.n;
  if (x.degree + y.degree > n) return zero_wedge(n, std::min(n, x.degree + y.degree));
  WedgeVector out = zero_wedge(n, x.degree + y.degree);
  const auto& bx = wedge_basis(n, x.degree);
  const auto& by = wedge_basis(n, y.degree);
  for (std::size_t a = 0; a < bx.size(); ++a) {
    if (x.coords[a] == 0) continue;
    unsigned ma = mask_of(bx[a]);
    for (std::size_t b = 0; b < by.size(); ++b) {
      if (y.coords[b] == 0 || (ma & mask_of(by[b]))) continue;
      Subset u = bx[a];
      u.insert(u.end(), by[b].begin(), by[b].end());
      std::sort(u.begin(), u.end());
      Rational term = x.coords[a] * y.coords[b];
      if (shuffle_sign(bx[a], by[b]) < 0) term = -term;
      out.coords[wedge_index(n, u)] += term;
    }
  }
  return out;
}

WedgeVector wedge(int n, const std::vector<Vector>& vectors) {
  WedgeVector acc = basis_wedge(n, {});
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("vector dimension mismatch");
    acc = wedge_product(acc, WedgeVector{n, 1, v});
  }
  return acc;
}

Rational wedge_pairing(const WedgeVector& x, const WedgeVector& y) {
  if (x.n != y.n || x.degree + y.degree != x.n) throw std::invalid_argument("pairing needs complementary degrees");
  return wedge_product(x, y).coords.at(0);
}

WedgeVector fil_max(const FilteredPhiModule& d, int i) {
  if (i < 1 || i > d.n - 1) throw std::invalid_argument("fil_max index out of range");
  return wedge(d.n, std::vector<Vector>(d.flag.begin() + i, d.flag.end()));
}

Subspace wedge_span(int n, const std::vector<WedgeFactor>& factors) {
  int degree = 0;
  for (const auto& f : factors) degree += f.count;
  if (degree > n) throw std::invalid_argument("wedge_span degree exceeds n");
  std::vector<WedgeVector> partial{basis_wedge(n, {})};
  for (const auto& f : factors) {
    auto basis = f.space.vectors();
    std::vector<WedgeVector> next;
    if (f.count > static_cast<int>(basis.size())) return Subspace(wedge_basis(n, degree).size());
    for (const auto& pick : subsets_of_size(static_cast<int>(basis.size()), f.count)) {
      std::vector<Vector> vs;
      for (int k : pick) vs.push_back(basis[static_cast<std::size_t>(k)]);
      WedgeVector piece = wedge(n, vs);
      for (const auto& p : partial) next.push_back(wedge_product(p, piece));
    }
    partial = std::move(next);
  }
  std::vector<Vector> coords;
  for (const auto& p : partial) coords.push_back(p.coords);
  return Subspace::span(wedge_basis(n, degree).size(), coords);
}

namespace {

std::vector<int> normalized_steps(int n, const std::vector<int>& S, int i) {
  std::vector<int> s = S;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (int x : s)
    if (x < 1 || x > n - 1) throw std::invalid_argument("step index out of range");
  if (!std::binary_search(s.begin(), s.end(), i)) throw std::invalid_argument("i must belong to S");
  s.insert(s.begin(), 0);
  return s;
}

}  // namespace

Subspace fil_2nd_max(const FilteredPhiModule& d, const std::vector<int>& S, int i) {
  const int n = d.n;
  auto s = normalized_steps(n, S, i);
  const auto j = static_cast<std::size_t>(std::find(s.begin(), s.end(), i) - s.begin());
  const auto m = s.size() - 1;
  auto fil = [&](int k) { return filtration_subspace(d, k); };
  if (j == m) return wedge_span(n, {{fil(i), n - i - 1}, {fil(s[j - 1]), 1}});
  return wedge_span(n, {{fil(s[j + 1]), n - s[j + 1]}, {fil(i), s[j + 1] - i - 1}, {fil(s[j - 1]), 1}});
}

std::size_t fil_2nd_max_dim(int n, const std::vector<int>& S, int i) {
  auto s = normalized_steps(n, S, i);
  const auto j = static_cast<std::size_t>(std::find(s.begin(), s.end(), i) - s.begin());
  const auto m = s.size() - 1;
  if (j == m) return static_cast<std::size_t>(1 + (n - i) * (i - s[j - 1]));
  return static_cast<std::size_t>(1 + (i - s[j - 1]) * (s[j + 1] - i));
}

WedgeVector LineMap::apply(const WedgeVector& w) const {
  if (w.coords.size() != functional.size()) throw std::invalid_argument("LineMap degree mismatch");
  Rational s = 0;
  for (std::size_t k = 0; k < functional.size(); ++k) s += functional[k] * w.coords[k];
  WedgeVector out = target;
  for (auto& x : out.coords) x *= s;
  return out;
}

LineMap estar(const FilteredPhiModule& d, const Subset& I, const Rational& scale) {
  const int i = static_cast<int>(I.size());
  WedgeVector v = fil_max(d, i);
  Subset Ic = complement(d.n, I);
  Rational lambda = v.coeff(Ic);
  Vector functional = unit_vector(wedge_basis(d.n, d.n - i).size(), wedge_index(d.n, Ic));
  Rational c = lambda != 0 ? scale / lambda : scale;
  for (auto& x : functional) x *= c;
  return LineMap{v, functional};
}

std::vector<Matrix> transfer_solve_many(const FilteredPhiModule& d, int i, const std::vector<LineMap>& maps) {
  const int n = d.n;
  if (i < 1 || i > n - 1) throw std::invalid_argument("transfer_solve index out of range");
  const auto un = static_cast<std::size_t>(n);
  const std::size_t unknowns = un * un + 1;  // f[r][c] at r*n+c, then the scalar
  const std::size_t scalar = un * un;
  const std::size_t k_rhs = maps.size();
  std::vector<Vector> rows, rhs;  // rhs[r] holds one entry per map
  auto push = [&](Vector row, Vector b) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  };

  Subspace fil = filtration_subspace(d, i);
  for (const auto& alpha : fil.annihilator())
    for (std::size_t c = 0; c < un; ++c) {
      Vector row = zero_vector(unknowns);
      for (std::size_t r = 0; r < un; ++r) row[r * un + c] = alpha[r];
      push(row, zero_vector(k_rhs));
    }
  for (int k = i; k < n; ++k) {
    const Vector& v = d.flag[static_cast<std::size_t>(k)];
    for (std::size_t r = 0; r < un; ++r) {
      Vector row = zero_vector(unknowns);
      for (std::size_t c = 0; c < un; ++c) row[r * un + c] = v[c];
      row[scalar] = -v[r];
      push(row, zero_vector(k_rhs));
    }
  }
  std::vector<Vector> tail(d.flag.begin() + i, d.flag.end());
  for (const auto& pick : subsets_of_size(n - i, n - i - 1)) {
    std::vector<Vector> xs;
    for (int k : pick) xs.push_back(tail[static_cast<std::size_t>(k)]);
    WedgeVector x = wedge(n, xs);
    std::vector<WedgeVector> x_e;
    for (std::size_t r = 0; r < un; ++r) x_e.push_back(wedge_product(x, WedgeVector{n, 1, unit_vector(un, r)}));
    for (std::size_t c = 0; c < un; ++c) {
      std::vector<WedgeVector> images;
      for (const auto& F : maps) images.push_back(F.apply(x_e[c]));
      for (std::size_t J = 0; J < x_e[c].coords.size(); ++J) {
        Vector row = zero_vector(unknowns);
        for (std::size_t r = 0; r < un; ++r) row[r * un + c] = x_e[r].coords[J];
        Vector b(k_rhs);
        for (std::size_t m = 0; m < k_rhs; ++m) b[m] = images[m].coords[J];
        push(row, b);
      }
    }
  }
  Matrix aug(rows.size(), unknowns + k_rhs);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < unknowns; ++c) aug.at(r, c) = rows[r][c];
    for (std::size_t m = 0; m < k_rhs; ++m) aug.at(r, unknowns + m) = rhs[r][m];
  }
  auto red = rref(aug);
  std::size_t lhs_rank = 0;
  for (std::size_t p : red.pivots) {
    if (p >= unknowns) throw std::logic_error("transfer system is inconsistent");
    ++lhs_rank;
  }
  if (lhs_rank != unknowns) throw std::logic_error("transfer system is not uniquely solvable");
  std::vector<Matrix> out;
  for (std::size_t m = 0; m < k_rhs; ++m) {
    Matrix f(un, un);
    for (std::size_t r = 0; r < un; ++r)
      for (std::size_t c = 0; c < un; ++c) f.at(r, c) = red.form.at(r * un + c, unknowns + m);
    out.push_back(f);
  }
  return out;
}

Matrix transfer_solve(const FilteredPhiModule& d, int i, const LineMap& F) {
  return transfer_solve_many(d, i, {F}).front();
}

}  // namespace phiflag
