#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "phiflag/t_map.hpp"

using namespace phiflag;

namespace {

Vector vec(std::vector<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
}

Matrix mat(std::vector<std::vector<long>> r) {
  std::vector<Vector> vs;
  for (const auto& row : r) vs.push_back(vec(row));
  return Matrix::from_rows(vs, r.front().size());
}

FilteredPhiModule n2(std::vector<Vector> flag) {
  FilteredPhiModule d;
  d.n = 2;
  d.p = 2;
  d.f = 1;
  d.eigenvalues = {Rational(1), Rational(3)};
  d.weights = {1, 0};
  d.flag = flag;
  return d;
}

FilteredPhiModule generic2() { return n2({vec({1, 0}), vec({1, 1})}); }
FilteredPhiModule swapped2() { return n2({vec({0, 1}), vec({1, 0})}); }

FilteredPhiModule reversed(int n, std::uint64_t seed = 0) {
  return module_with_flag(n, 2, 1, seed, permutation_flag(Permutation::longest(n)));
}

std::vector<StepSet> step_sets(int n) {
  std::vector<StepSet> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    StepSet s;
    for (int i = 1; i < n; ++i)
      if (mask & (1u << (i - 1))) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

std::vector<FilteredPhiModule> corpus(int n, int randoms) {
  std::vector<FilteredPhiModule> out;
  if (n <= 4)
    for (const auto& pi : Permutation::all(n)) out.push_back(module_with_flag(n, 2, 1, 7, permutation_flag(pi)));
  for (int k = 0; k < randoms; ++k)
    out.push_back(random_module(n, 2, 1, static_cast<std::uint64_t>(k), k % 2 ? FlagMode::mixed : FlagMode::generic));
  return out;
}

}  // namespace

TEST_CASE("homfil examples") {
  Subspace h = homfil_basis(swapped2());
  CHECK(h.dim() == 3);
  CHECK(h.contains(mat({{1, 0}, {0, 0}}).flat()));
  CHECK(h.contains(mat({{0, 1}, {0, 0}}).flat()));
  CHECK_FALSE(h.contains(mat({{0, 0}, {1, 0}}).flat()));
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto d = random_module(3, 2, 1, seed, FlagMode::mixed);
    Subspace hd = homfil_basis(d);
    CHECK(hd.dim() == 6);
    CHECK(hd.contains(Matrix::identity(3).flat()));
    for (const auto& m : hd.vectors()) {
      Matrix M = Matrix::from_flat(3, 3, m);
      for (int j = 0; j < 3; ++j) {
        Subspace F = filtration_subspace(d, j);
        for (const auto& v : F.vectors()) CHECK(F.contains(M * v));
      }
    }
  }
}

TEST_CASE("operator examples") {
  TMap g(generic2());
  CHECK(g.T(Subset{0}) == mat({{0, 1}, {0, 1}}));
  TMap s(swapped2());
  CHECK(s.T(Subset{1}) == mat({{1, 0}, {0, 0}}));
  CHECK(s.T(Subset{0}) == mat({{0, 1}, {0, 0}}));
  TMap gl4(reversed(4));
  CHECK(gl4.T(Subset{0, 1}).is_zero());
}

TEST_CASE("apply examples") {
  TMap t(random_module(3, 2, 1, 4, FlagMode::generic));
  TDomainVector z{zero_vector(3), Rational(0), zero_vector(t.subsets().size())};
  auto r0 = t.apply(z);
  CHECK(is_zero(r0.phi_part));
  CHECK(r0.fil_part.is_zero());
  TDomainVector m = z;
  m.mu = 1;
  CHECK(t.apply(m).fil_part == Matrix::identity(3));
  for (std::size_t k = 0; k < t.subsets().size(); ++k) {
    TDomainVector c = z;
    c.c[k] = 1;
    auto r = t.apply(c);
    CHECK(is_zero(r.phi_part));
    CHECK(r.fil_part == t.T(k));
  }
  TDomainVector p = z;
  p.psi = vec({1, -2, 3});
  CHECK(t.apply(p).phi_part == p.psi);
  CHECK(t.unpack(t.pack(p)).psi == p.psi);
}

TEST_CASE("kernel examples") {
  CHECK(TMap(generic2()).kernel(all_steps(2)).dim() == 0);
  CHECK(TMap(swapped2()).kernel(all_steps(2)).dim() == 0);
  CHECK(TMap(random_module(3, 2, 1, 1, FlagMode::generic)).kernel(all_steps(3)).dim() == 1);
  TMap t4(random_module(4, 2, 1, 1, FlagMode::generic));
  CHECK(t4.kernel({2}).dim() == 1);
  CHECK(t4.kernel({1}).dim() == 0);
  CHECK(t4.kernel({3}).dim() == 0);
  CHECK(TMap(reversed(4)).kernel(all_steps(4)).dim() == 5);
}

TEST_CASE("kernel formula against position counting, every S, n <= 5") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& S : step_sets(n)) CHECK(kernel_formula_dim(n, S) == oracle::kernel_count(n, S));
    CHECK(kernel_formula_dim(n, all_steps(n)) == (1L << n) - 1 - n * (n + 1) / 2);
    for (int j = 1; j < n; ++j) CHECK(kernel_formula_dim(n, {j}) == oracle::binom(n, j) - 1 - j * (n - j));
    for (const auto& d : corpus(n, n == 5 ? 4 : 3)) {
      TMap t(d);
      for (const auto& S : step_sets(n)) CHECK(static_cast<long>(t.kernel(S).dim()) == oracle::kernel_count(n, S));
      // Kernel vectors really are killed by t.
      for (const auto& v : t.kernel(all_steps(n)).vectors()) CHECK(is_zero(t.matrix() * v));
    }
  }
}

TEST_CASE("surjectivity onto homfil") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& d : corpus(n, 3)) {
      TMap t(d);
      const auto un = static_cast<std::size_t>(n);
      std::vector<Vector> Ts;
      for (std::size_t k = 0; k < t.subsets().size(); ++k) Ts.push_back(t.T(k).flat());
      Subspace spanT = Subspace::span(un * un, Ts);
      Subspace id = Subspace::span(un * un, {Matrix::identity(un).flat()});
      CHECK_FALSE(spanT.contains(Matrix::identity(un).flat()));
      CHECK(sum(spanT, id) == homfil_basis(d));
      CHECK(spanT.dim() + 1 == un * (un + 1) / 2);
    }
}

TEST_CASE("image characterization examples") {
  TMap g(generic2());
  auto e = kernel_image_in_homfil(g, {1}, 1);
  CHECK(e.kernel_side.dim() == 0);
  CHECK(e.holds());
  TMap r3(reversed(3));
  auto a = kernel_image_in_homfil(r3, {1, 2}, 2);
  CHECK(a.holds());
  CHECK(a.kernel_side.dim() == 1);
  TMap g3(random_module(3, 2, 1, 2, FlagMode::generic));
  auto b = kernel_image_in_homfil(g3, {1, 2}, 2);
  CHECK(b.holds());
  CHECK(b.kernel_side.dim() == 1);
}

TEST_CASE("image characterizations, every S and i, n <= 4") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& d : corpus(n, 2)) {
      TMap t(d);
      for (const auto& S : step_sets(n))
        for (int i : S) {
          CHECK(kernel_image_in_homfil(t, S, i).holds());
          CHECK(inf_image_in_homfil(t, S, i).holds());
        }
    }
}

TEST_CASE("inf domain examples") {
  TMap g(generic2());  // both subsets nonsplit
  CHECK_FALSE(g.split(0));
  CHECK_FALSE(g.split(1));
  Subspace U = g.inf_domain({1});
  CHECK(U.dim() == 1);
  for (const auto& v : U.vectors()) {
    auto x = g.unpack(v);
    CHECK(x.mu == 0);
    CHECK(x.c[0] + x.c[1] == 0);
  }
  CHECK(g.inf_domain({}).dim() == 0);
  // With a split subset of size j the sum has fewer terms.
  TMap s(swapped2());
  CHECK(s.split(0));
  CHECK_FALSE(s.split(1));
  Subspace V = s.inf_domain({1});
  CHECK(V.dim() == 1);
  CHECK(V.contains(unit_vector(s.domain_dim(), s.c_offset() + 0)));
}

TEST_CASE("classification examples") {
  auto cs = classify(TMap(swapped2()));
  CHECK(cs[0].I == Subset{0});
  CHECK(cs[0].split);
  CHECK(cs[1].I == Subset{1});
  CHECK_FALSE(cs[1].split);
  for (const auto& c : cs) CHECK_FALSE(c.very_critical);

  auto gl4 = classify(TMap(reversed(4)));
  std::vector<Subset> vc;
  for (const auto& c : gl4)
    if (c.very_critical) vc.push_back(c.I);
  CHECK(vc == std::vector<Subset>{{0, 1}});

  for (int n = 2; n <= 3; ++n)
    for (const auto& d : corpus(n, 4))
      for (const auto& c : classify(TMap(d))) CHECK_FALSE(c.very_critical);
}

TEST_CASE("classification is independent of the compatible refinement, n <= 4") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& d : corpus(n, 2)) {
      TMap t(d);
      for (const auto& c : classify(t)) {
        const int i = static_cast<int>(c.I.size());
        for (const auto& tau : compatible_refinements(n, c.I)) {
          Permutation w = relative_position(d, tau) * Permutation::longest(n);
          CHECK(in_support(w, i) == c.critical);
          CHECK((crossing_number(w, i) >= 2) == c.very_critical);
        }
        CHECK(c.critical == c.split);
        if (c.very_critical) CHECK(c.split);
      }
    }
}

TEST_CASE("cosplit duality") {
  for (int n = 2; n <= 5; ++n)
    for (const auto& d : corpus(n, n == 5 ? 4 : 6)) {
      TMap t(d);
      for (const auto& c : classify(t)) {
        bool split_c = t.split(t.position(complement(n, c.I)));
        if (n == 2) CHECK(c.cosplit);
        if (n >= 3 && c.cosplit) CHECK(split_c);
        if (n == 3) CHECK(c.cosplit == split_c);
      }
    }
}

TEST_CASE("homfilR examples") {
  auto g = generic2();
  HomfilR R = homfilR(g, Permutation::identity(2), 1);
  CHECK(R.space.dim() == 2);
  CHECK(R.bijective());
  HomfilR Rs = homfilR(swapped2(), Permutation::identity(2), 1);
  CHECK_FALSE(Rs.bijective());
  CHECK(Rs.image_rank == 2);
  auto ab = f_i(g, Permutation::identity(2), 1, Matrix::identity(2));
  CHECK(ab.first == 1);
  CHECK(ab.second == 1);
  CHECK_THROWS_AS(f_i(g, Permutation::identity(2), 1, mat({{0, 0}, {1, 0}})), std::invalid_argument);
}

TEST_CASE("homfilR dimension and bijectivity, every refinement, n <= 4") {
  for (int n = 2; n <= 4; ++n)
    for (const auto& d : corpus(n, 2))
      for (const auto& tau : Permutation::all(n)) {
        Permutation wR = relative_position(d, tau);
        for (int i = 1; i < n; ++i) {
          HomfilR R = homfilR(d, tau, i);
          CHECK(R.image_rank == 2);
          CHECK(R.space.dim() == 2 + nilradical_overlap_dim(wR, i));
          CHECK(R.bijective() == !in_support(wR * Permutation::longest(n), i));
          // With this relative position convention the overlap is the pair count
          // of the inverse of w_R w_0.
          CHECK(static_cast<int>(nilradical_overlap_dim(wR, i)) ==
                pair_count((wR * Permutation::longest(n)).inverse(), i));
        }
      }
}

TEST_CASE("crossing-one kernel check examples") {
  TMap s(swapped2());
  CHECK(s.T(Subset{0}) == mat({{0, 1}, {0, 0}}));
  CHECK(crit_kernel_check(s, {0}));
  CritReport r = crit_kernel_report(s, {0});
  CHECK(r.kernel_dim == 1);
  CHECK(r.f_zero);

  TMap gl4(reversed(4));
  CHECK_THROWS_AS(crit_kernel_check(gl4, {0, 1}), std::invalid_argument);  // very critical
  TMap g(generic2());
  CHECK_THROWS_AS(crit_kernel_check(g, {0}), std::invalid_argument);  // not critical
}

TEST_CASE("crossing number one does not force a one-dimensional kernel of f_i") {
  // Reversed flag in rank 3, I = {0}: w_R = id, so w_R w_0 = w_0 has crossing number 1
  // at i = 1, but the kernel of f_1 is two-dimensional and T_I cannot span it.
  TMap t(reversed(3));
  const Permutation tau = canonical_refinement(3, {0});
  CHECK(relative_position(t.module(), tau) == Permutation::identity(3));
  const Permutation w = relative_position(t.module(), tau) * Permutation::longest(3);
  CHECK(crossing_number(w, 1) == 1);
  CritReport r = crit_kernel_report(t, {0});
  CHECK(r.nonzero);
  CHECK(r.in_homfilR);
  CHECK(r.f_zero);
  CHECK(r.kernel_dim == 2);
  CHECK(r.overlap_dim == 2);
  CHECK_FALSE(r.spans);
  CHECK_FALSE(crit_kernel_check(t, {0}));
  CHECK(crit_kernel_check(t, {1}));
}

TEST_CASE("crossing-one configurations: sub-checks always hold, spanning iff overlap one") {
  int spans = 0, wide = 0;
  for (int n = 2; n <= 4; ++n)
    for (const auto& d : corpus(n, 3)) {
      TMap t(d);
      for (const auto& c : classify(t)) {
        if (c.crossing != 1) continue;
        CritReport r = crit_kernel_report(t, c.I);
        CHECK(r.nonzero);
        CHECK(r.in_homfilR);
        CHECK(r.f_zero);
        CHECK(r.kernel_dim == r.overlap_dim);
        CHECK(r.spans == (r.overlap_dim == 1));
        (r.spans ? spans : wide) += 1;
      }
    }
  CHECK(spans > 0);
  CHECK(wide > 0);
}

TEST_CASE("choice invariance under rescaled operators") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    int n = 2 + static_cast<int>(seed % 3);
    auto d = random_module(n, 2, 1, seed, seed % 2 ? FlagMode::mixed : FlagMode::generic);
    TMap t(d);
    std::vector<Rational> scales;
    for (std::size_t k = 0; k < t.subsets().size(); ++k) scales.push_back(Rational(static_cast<long>(k % 3) + 2, (k % 2) ? -3 : 5));
    for (auto& q : scales) q.canonicalize();
    TMap u(d, scales);
    for (std::size_t k = 0; k < t.subsets().size(); ++k) {
      Matrix expect = scales[k] * t.T(k);
      CHECK(u.T(k) == expect);
    }
    for (const auto& S : step_sets(n)) {
      CHECK(u.kernel(S).dim() == t.kernel(S).dim());
      for (int i : S) {
        CHECK(kernel_image_in_homfil(u, S, i).kernel_side == kernel_image_in_homfil(t, S, i).kernel_side);
        CHECK(inf_image_in_homfil(u, S, i).kernel_side == inf_image_in_homfil(t, S, i).kernel_side);
      }
    }
    auto a = classify(t), b = classify(u);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].split == b[k].split);
      CHECK(a[k].cosplit == b[k].cosplit);
      CHECK(a[k].very_critical == b[k].very_critical);
    }
  }
  CHECK_THROWS_AS(TMap(generic2(), {Rational(1), Rational(0)}), std::invalid_argument);
  CHECK_THROWS_AS(TMap(generic2(), {Rational(1)}), std::invalid_argument);
}
