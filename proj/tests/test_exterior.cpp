#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "phiflag/exterior.hpp"

using namespace phiflag;

namespace {

Vector vec(std::vector<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Rational(x));
  return v;
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

FilteredPhiModule reversed(int n) { return module_with_flag(n, 2, 1, 0, permutation_flag(Permutation::longest(n))); }

Matrix mat(std::vector<std::vector<long>> r) {
  std::vector<Vector> vs;
  for (const auto& row : r) vs.push_back(vec(row));
  return Matrix::from_rows(vs, r.front().size());
}

Vector random_vector(std::mt19937_64& gen, int n) {
  std::uniform_int_distribution<int> pick(-3, 3);
  Vector v;
  for (int k = 0; k < n; ++k) v.push_back(Rational(pick(gen)));
  return v;
}

/// Sign of the shuffle that sorts J followed by K, or 0 if they meet.
int shuffle_sign(const Subset& J, const Subset& K) {
  Subset all = J;
  all.insert(all.end(), K.begin(), K.end());
  int inv = 0;
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      if (all[a] == all[b]) return 0;
      if (all[a] > all[b]) ++inv;
    }
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("wedge examples") {
  CHECK(wedge(2, {vec({1, 0}), vec({1, 0})}).is_zero());
  CHECK(wedge(2, {vec({1, 1}), vec({0, 1})}) == basis_wedge(2, {0, 1}));
  WedgeVector w = wedge(2, {vec({1, 1}), vec({1, -1})});
  CHECK(w.coeff({0, 1}) == -2);
  CHECK(wedge(3, {}).degree == 0);
  CHECK(wedge(3, {}).coords == Vector{Rational(1)});
}

TEST_CASE("basis ordering") {
  CHECK(wedge_basis(4, 2) == oracle::k_subsets(4, 2));
  for (int k = 0; k <= 4; ++k) {
    const auto& b = wedge_basis(4, k);
    CHECK(static_cast<long>(b.size()) == oracle::binom(4, k));
    for (std::size_t a = 0; a < b.size(); ++a) CHECK(wedge_index(4, b[a]) == a);
  }
}

TEST_CASE("wedge of basis vectors follows the shuffle sign") {
  for (int n = 2; n <= 5; ++n)
    for (int j = 0; j <= n; ++j)
      for (int k = 0; j + k <= n; ++k)
        for (const auto& J : wedge_basis(n, j))
          for (const auto& K : wedge_basis(n, k)) {
            WedgeVector p = wedge_product(basis_wedge(n, J), basis_wedge(n, K));
            int sign = shuffle_sign(J, K);
            if (sign == 0) {
              CHECK(p.is_zero());
            } else {
              Subset U = J;
              U.insert(U.end(), K.begin(), K.end());
              std::sort(U.begin(), U.end());
              CHECK(p == [&] {
                WedgeVector e = basis_wedge(n, U);
                for (auto& x : e.coords) x *= sign;
                return e;
              }());
            }
          }
}

TEST_CASE("wedge coordinates are minors") {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 4;
    int k = 1 + trial % n;
    std::vector<Vector> vs;
    for (int a = 0; a < k; ++a) vs.push_back(random_vector(gen, n));
    WedgeVector w = wedge(n, vs);
    Matrix m = Matrix::from_columns(vs, static_cast<std::size_t>(n));
    std::vector<int> cols;
    for (int a = 0; a < k; ++a) cols.push_back(a);
    for (const auto& J : wedge_basis(n, k)) CHECK(w.coeff(J) == oracle::minor(m, J, cols));
    // Associativity and graded commutativity.
    Vector extra = random_vector(gen, n);
    WedgeVector e = wedge(n, {extra});
    CHECK(wedge_product(w, e) == wedge(n, [&] {
      auto all = vs;
      all.push_back(extra);
      return all;
    }()));
    WedgeVector ew = wedge_product(e, w);
    WedgeVector we = wedge_product(w, e);
    if (k % 2 == 1)
      for (auto& x : we.coords) x = -x;
    CHECK(ew == we);
  }
}

TEST_CASE("pairing examples") {
  CHECK(wedge_pairing(basis_wedge(2, {0}), basis_wedge(2, {1})) == 1);
  CHECK(wedge_pairing(basis_wedge(2, {1}), basis_wedge(2, {0})) == -1);
  CHECK(wedge_pairing(basis_wedge(4, {0, 1}), basis_wedge(4, {2, 3})) == 1);
  CHECK(wedge_pairing(basis_wedge(4, {0, 2}), basis_wedge(4, {1, 3})) == -1);
}

TEST_CASE("fil_max examples") {
  auto generic = n2({vec({1, 0}), vec({1, 1})});
  CHECK(fil_max(generic, 1) == WedgeVector{2, 1, vec({1, 1})});
  // Defined up to scale: v_1 ^ v_2 = e_1 ^ e_0 = -e_{01}.
  WedgeVector r = fil_max(reversed(3), 1);
  CHECK(Subspace::span(3, {r.coords}) == Subspace::span(3, {basis_wedge(3, {0, 1}).coords}));
  CHECK(r.coeff({0, 1}) == -1);
  auto swapped = n2({vec({0, 1}), vec({1, 0})});
  CHECK(fil_max(swapped, 1) == basis_wedge(2, {0}));
}

TEST_CASE("fil_2nd_max examples") {
  auto r3 = reversed(3);
  Subspace a = fil_2nd_max(r3, {1, 2}, 2);
  CHECK(a == Subspace::span(3, {unit_vector(3, 0), unit_vector(3, 1)}));
  Subspace b = fil_2nd_max(r3, {1, 2}, 1);
  CHECK(b == Subspace::span(3, {basis_wedge(3, {0, 1}).coords, basis_wedge(3, {0, 2}).coords}));
  auto generic = n2({vec({1, 0}), vec({1, 1})});
  CHECK(fil_2nd_max(generic, {1}, 1) == Subspace::full(2));
}

TEST_CASE("fil_2nd_max dimensions and the last step, n <= 5") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    auto d = random_module(n, 2, 1, seed, seed % 2 ? FlagMode::mixed : FlagMode::generic);
    for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
      std::vector<int> S;
      for (int i = 1; i < n; ++i)
        if (mask & (1u << (i - 1))) S.push_back(i);
      for (std::size_t pos = 0; pos < S.size(); ++pos) {
        const int i = S[pos];
        const int prev = pos == 0 ? 0 : S[pos - 1];
        std::size_t expect = pos + 1 == S.size()
                                 ? static_cast<std::size_t>(1 + (n - i) * (i - prev))
                                 : static_cast<std::size_t>(1 + (i - prev) * (S[pos + 1] - i));
        CHECK(fil_2nd_max_dim(n, S, i) == expect);
        Subspace sub = fil_2nd_max(d, S, i);
        CHECK(sub.dim() == expect);
        CHECK(sub.contains(fil_max(d, i).coords));
        Subspace top = wedge_span(n, {{filtration_subspace(d, i), n - i}});
        CHECK(top == Subspace::span(top.ambient(), {fil_max(d, i).coords}));
      }
    }
  }
}

TEST_CASE("estar and transfer examples") {
  auto generic = n2({vec({1, 0}), vec({1, 1})});
  LineMap F = estar(generic, {0});
  CHECK(F.apply(basis_wedge(2, {0})).is_zero());
  CHECK(F.apply(basis_wedge(2, {1})) == WedgeVector{2, 1, vec({1, 1})});
  CHECK(transfer_solve(generic, 1, F) == mat({{0, 1}, {0, 1}}));

  auto swapped = n2({vec({0, 1}), vec({1, 0})});
  LineMap G = estar(swapped, {0});
  CHECK(G.apply(basis_wedge(2, {1})) == basis_wedge(2, {0}));
  CHECK(G.apply(fil_max(swapped, 1)).is_zero());
  CHECK(transfer_solve(swapped, 1, G) == mat({{0, 1}, {0, 0}}));
  CHECK(transfer_solve(swapped, 1, estar(swapped, {1})) == mat({{1, 0}, {0, 0}}));

  LineMap zero{fil_max(generic, 1), zero_vector(2)};
  CHECK(transfer_solve(generic, 1, zero).is_zero());
}

TEST_CASE("transfer of estar has the operator shape, n <= 5") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    int n = 2 + static_cast<int>(seed % 4);
    auto d = random_module(n, 2, 1, seed, seed % 3 == 0 ? FlagMode::generic : FlagMode::mixed);
    for (const auto& I : proper_subsets(n)) {
      const int i = static_cast<int>(I.size());
      bool split = fil_max(d, i).coeff(complement(n, I)) == 0;
      LineMap F = estar(d, I);
      if (split) CHECK(F.apply(fil_max(d, i)).is_zero());
      Matrix f = transfer_solve(d, i, F);
      // f preserves the i-th step and is scalar on it.
      for (const auto& v : filtration_subspace(d, i).vectors()) {
        Vector fv = f * v;
        CHECK(filtration_subspace(d, i).contains(fv));
      }
      for (int j = 0; j < n; ++j) {
        bool in_I = std::binary_search(I.begin(), I.end(), j);
        for (int r = 0; r < n; ++r) {
          bool r_in = std::binary_search(I.begin(), I.end(), r);
          const Rational& x = f.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j));
          if (in_I)
            CHECK(x == 0);
          else if (!r_in)
            CHECK(x == ((!split && r == j) ? 1 : 0));
        }
      }
      // Batched and single solves agree.
      CHECK(transfer_solve_many(d, i, {F, F}).at(1) == f);
    }
  }
}
