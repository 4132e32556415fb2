#include "phiflag/skeleton.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace phiflag {

namespace {

Constituent alg() { return Constituent{}; }
Constituent comp(const Subset& I) { return Constituent{false, I, 0}; }

bool in_steps(const StepSet& S, std::size_t k) {
  return std::find(S.begin(), S.end(), static_cast<int>(k)) != S.end();
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Kernel projected to the c-coordinates.
Subspace c_part(const TMap& t, const Subspace& K) {
  std::vector<Vector> out;
  for (const auto& v : K.vectors()) out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(t.c_offset()), v.end());
  return Subspace::span(t.subsets().size(), out);
}

PiSkeleton assemble(const TMap& t, const StepSet& S, bool flat) {
  const auto classes = classify(t);
  const Subspace K = t.kernel(S);
  const Subspace Kc = c_part(t, K);
  PiSkeleton sk;
  sk.n = t.n();
  sk.S = S;
  std::sort(sk.S.begin(), sk.S.end());
  sk.flat = flat;
  sk.socle.push_back(alg());

  std::vector<Vector> drop_rows;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    if (!in_steps(S, c.I.size())) continue;
    if (c.very_critical) {
      if (flat) {
        drop_rows.push_back(unit_vector(t.domain_dim(), t.c_offset() + k));
        continue;
      }
      sk.very_critical_summands.push_back(c.I);
    }
    if (c.split)
      sk.socle.push_back(comp(c.I));
    else
      sk.middle_nonsplit.push_back(comp(c.I));

    bool cos = cosplit(t.module(), S, c.I);
    bool vanishes = true;
    for (const auto& v : Kc.vectors())
      if (v[k] != 0) vanishes = false;
    if (cos != vanishes) throw InvariantFailure("cosocle test disagrees with kernel support for " + subset_str(c.I));
    if (cos) sk.cosocle.push_back(comp(c.I));
  }

  if (flat) {
    Subspace restricted = K;
    if (!drop_rows.empty()) {
      Subspace zeroed = kernel(Matrix::from_rows(drop_rows, t.domain_dim()));
      restricted = intersect(K, zeroed);
    }
    sk.top_alg_multiplicity = static_cast<long>(restricted.dim());
    if (sk.top_alg_multiplicity != static_cast<long>(K.dim() - drop_rows.size()))
      throw InvariantFailure("flat multiplicity differs from kernel dimension minus very-critical count");
  } else {
    sk.top_alg_multiplicity = static_cast<long>(K.dim());
  }

  for (const auto& block : decompose_by_support(Kc)) {
    std::vector<Subset> named;
    for (auto k : block) named.push_back(t.subsets()[k]);
    bool drop = false;
    if (flat)
      for (const auto& I : named)
        for (std::size_t k = 0; k < classes.size(); ++k)
          if (classes[k].I == I && classes[k].very_critical) drop = true;
    if (!drop) sk.kernel_blocks.push_back(named);
  }
  for (const auto& I : sk.very_critical_summands) {
    std::vector<Subset> single{I};
    if (std::find(sk.kernel_blocks.begin(), sk.kernel_blocks.end(), single) == sk.kernel_blocks.end())
      throw InvariantFailure("very-critical subset is not an isolated kernel block: " + subset_str(I));
  }
  return sk;
}

}  // namespace

std::string Constituent::label() const {
  std::string s = alg ? "ALG" : "C" + subset_str(I);
  if (sigma) s += "@" + std::to_string(sigma);
  return s;
}

bool operator<(const Constituent& a, const Constituent& b) {
  if (a.sigma != b.sigma) return a.sigma < b.sigma;
  if (a.alg != b.alg) return a.alg;
  if (a.I.size() != b.I.size()) return a.I.size() < b.I.size();
  return a.I < b.I;
}

bool operator==(const PiSkeleton& a, const PiSkeleton& b) {
  return a.n == b.n && a.S == b.S && a.flat == b.flat && a.socle == b.socle && a.middle_nonsplit == b.middle_nonsplit &&
         a.top_alg_multiplicity == b.top_alg_multiplicity && a.very_critical_summands == b.very_critical_summands &&
         a.cosocle == b.cosocle && a.kernel_blocks == b.kernel_blocks;
}

bool skeleton_equal(const PiSkeleton& a, const PiSkeleton& b) {
  auto canon = [](PiSkeleton s) {
    std::sort(s.socle.begin(), s.socle.end());
    std::sort(s.middle_nonsplit.begin(), s.middle_nonsplit.end());
    std::sort(s.cosocle.begin(), s.cosocle.end());
    std::sort(s.very_critical_summands.begin(), s.very_critical_summands.end());
    for (auto& b : s.kernel_blocks) std::sort(b.begin(), b.end());
    std::sort(s.kernel_blocks.begin(), s.kernel_blocks.end());
    return s;
  };
  return canon(a) == canon(b);
}

std::string PiSkeleton::diagram() const {
  std::ostringstream out;
  auto row = [&](const std::string& name, const std::vector<Constituent>& cs, long algs) {
    out << name << ":";
    if (algs > 0) out << " ALG^" << algs;
    for (const auto& c : cs) out << " " << c.label();
    if (algs == 0 && cs.empty()) out << " -";
    out << "\n";
  };
  out << "n=" << n << " S={";
  for (std::size_t k = 0; k < S.size(); ++k) out << (k ? "," : "") << S[k];
  out << "}" << (flat ? " flat" : "") << "\n";
  row("top     ", {}, top_alg_multiplicity);
  row("middle  ", middle_nonsplit, 0);
  row("socle   ", socle, 0);
  row("cosocle ", cosocle, top_alg_multiplicity);
  out << "summands:";
  for (const auto& I : very_critical_summands) out << " [C" << subset_str(I) << " - ALG]";
  if (very_critical_summands.empty()) out << " -";
  out << "\n";
  return out.str();
}

PiSkeleton build_pi(const TMap& t) { return assemble(t, all_steps(t.n()), false); }
PiSkeleton build_pi_S(const TMap& t, const StepSet& S) { return assemble(t, S, false); }
PiSkeleton build_pi_flat(const TMap& t) { return assemble(t, all_steps(t.n()), true); }

std::vector<std::vector<std::size_t>> decompose_by_support(const Subspace& U) {
  const std::size_t N = U.ambient();
  std::vector<std::size_t> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> used(N, false);
  for (const auto& v : U.vectors()) {
    std::size_t first = N;
    for (std::size_t k = 0; k < N; ++k) {
      if (v[k] == 0) continue;
      used[k] = true;
      if (first == N)
        first = k;
      else
        parent[find_root(parent, k)] = find_root(parent, first);
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> slot(N, N);
  for (std::size_t k = 0; k < N; ++k) {
    if (!used[k]) continue;
    std::size_t r = find_root(parent, k);
    if (slot[r] == N) {
      slot[r] = blocks.size();
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(k);
  }

  Subspace assembled(N);
  std::size_t total = 0;
  for (const auto& b : blocks) {
    std::vector<Vector> outside;
    for (std::size_t k = 0; k < N; ++k)
      if (!std::binary_search(b.begin(), b.end(), k)) outside.push_back(unit_vector(N, k));
    Subspace coord = outside.empty() ? Subspace::full(N) : kernel(Matrix::from_rows(outside, N));
    Subspace piece = intersect(U, coord);
    total += piece.dim();
    assembled = sum(assembled, piece);
  }
  if (!(assembled == U) || total != U.dim()) throw InvariantFailure("support blocks do not reassemble the subspace");
  return blocks;
}

bool ExtDims::consistent() const {
  for (long v : per_embedding)
    if (v != n + n * (n + 1) / 2) return false;
  return aggregate_closed == aggregate_assembled;
}

ExtDims ext_dims(const std::vector<FilteredPhiModule>& modules) {
  if (modules.empty()) throw std::invalid_argument("ext_dims needs at least one module");
  const auto& first = modules.front();
  for (const auto& d : modules)
    if (d.n != first.n || d.p != first.p || d.f != first.f || d.eigenvalues != first.eigenvalues)
      throw std::invalid_argument("embeddings must share n, p, f and eigenvalues");
  const long n = first.n;
  ExtDims e;
  e.n = n;
  for (const auto& d : modules) {
    TMap t(d);
    Subspace hom = homfil_basis(d);
    std::vector<Vector> gens{Matrix::identity(static_cast<std::size_t>(n)).flat()};
    for (std::size_t k = 0; k < t.subsets().size(); ++k) gens.push_back(t.T(k).flat());
    if (!(Subspace::span(hom.ambient(), gens) == hom))
      throw InvariantFailure("T operators and identity do not span the filtered endomorphisms");
    e.per_embedding.push_back(n + static_cast<long>(hom.dim()));
  }
  const long d = static_cast<long>(modules.size());
  e.aggregate_closed = n + d * n * (n + 1) / 2;
  e.aggregate_assembled = std::accumulate(e.per_embedding.begin(), e.per_embedding.end(), 0L) - (d - 1) * n;
  return e;
}

}  // namespace phiflag
