#include "phiflag/phi_module.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <stdexcept>

namespace phiflag {

namespace {

void choose(int n, int k, int start, Subset& cur, std::vector<Subset>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x < n; ++x) {
    cur.push_back(x);
    choose(n, k, x + 1, cur, out);
    cur.pop_back();
  }
}

Rational power(long p, int f) {
  mpz_class r = 1;
  for (int k = 0; k < f; ++k) r *= p;
  return Rational(r);
}

Matrix flag_columns(const FilteredPhiModule& d, int from) {
  std::vector<Vector> cols(d.flag.begin() + from, d.flag.end());
  return Matrix::from_columns(cols, static_cast<std::size_t>(d.n));
}

bool all_minors_nonzero(const FilteredPhiModule& d) {
  for (int j = 1; j < d.n; ++j) {
    Matrix cols = flag_columns(d, j);
    for (const auto& rows : subsets_of_size(d.n, d.n - j)) {
      Matrix minor(rows.size(), rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows.size(); ++c) minor.at(r, c) = cols.at(static_cast<std::size_t>(rows[r]), c);
      if (determinant(minor) == 0) return false;
    }
  }
  return true;
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  Rational rational(long lo, long hi, long max_den) {
    Rational q(integer(lo, hi), integer(1, max_den));
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<Rational> draw_eigenvalues(Draw& draw, int n) {
  std::vector<Rational> ev;
  while (static_cast<int>(ev.size()) < n) {
    Rational q = draw.rational(-30, 30, 7);
    if (q != 0) ev.push_back(q);
  }
  return ev;
}

std::vector<long> default_weights(int n) {
  std::vector<long> w;
  for (int j = 0; j < n; ++j) w.push_back(n - 1 - j);
  return w;
}

}  // namespace

std::vector<Subset> subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  Subset cur;
  choose(n, k, 0, cur, out);
  return out;
}

std::vector<Subset> proper_subsets(int n) {
  std::vector<Subset> out;
  for (int k = 1; k < n; ++k) {
    auto s = subsets_of_size(n, k);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

Subset complement(int n, const Subset& s) {
  Subset c;
  for (int x = 0; x < n; ++x)
    if (!std::binary_search(s.begin(), s.end(), x)) c.push_back(x);
  return c;
}

std::string subset_str(const Subset& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(s[k]);
  }
  return out + "}";
}

std::vector<std::string> validate(const FilteredPhiModule& d) {
  std::vector<std::string> v;
  if (d.n < 2) v.push_back("rank must be at least 2");
  if (d.p < 2) v.push_back("p must be a prime");
  for (long q = 2; q * q <= d.p; ++q)
    if (d.p % q == 0) {
      v.push_back("p must be a prime");
      break;
    }
  if (d.f < 1) v.push_back("f must be at least 1");
  const auto n = static_cast<std::size_t>(std::max(d.n, 0));
  if (d.eigenvalues.size() != n) v.push_back("expected n eigenvalues");
  if (d.weights.size() != n) v.push_back("expected n weights");
  if (d.flag.size() != n) v.push_back("expected n flag vectors");
  if (!v.empty()) return v;

  for (const auto& e : d.eigenvalues)
    if (e == 0) v.push_back("eigenvalue is zero");
  if (v.empty()) {
    Rational pf = d.f <= 64 ? power(d.p, d.f) : Rational(0);
    bool equal = false, ratio = false;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (j == k) continue;
        Rational q = d.eigenvalues[j] / d.eigenvalues[k];
        if (q == 1) equal = true;
        if (q == pf) ratio = true;
      }
    if (equal) v.push_back("two eigenvalues coincide");
    if (ratio) v.push_back("ratio equals p^f");
  }
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (d.weights[j] <= d.weights[j + 1]) {
      v.push_back("weights not strictly decreasing");
      break;
    }
  bool shape_ok = true;
  for (const auto& vec : d.flag)
    if (vec.size() != n) shape_ok = false;
  if (!shape_ok) {
    v.push_back("flag vector has wrong dimension");
  } else if (rank(Matrix::from_rows(d.flag, n)) != n) {
    v.push_back("flag vectors are linearly dependent");
  }
  return v;
}

void require_valid(const FilteredPhiModule& d) {
  auto v = validate(d);
  if (v.empty()) return;
  std::string msg = "invalid module:";
  for (const auto& s : v) msg += " " + s + ";";
  throw std::invalid_argument(msg);
}

Subspace filtration_subspace(const FilteredPhiModule& d, int j) {
  if (j < 0 || j >= d.n) throw std::invalid_argument("filtration index out of range");
  return Subspace::span(static_cast<std::size_t>(d.n), std::vector<Vector>(d.flag.begin() + j, d.flag.end()));
}

Permutation canonical_refinement(int n, const Subset& I) {
  std::vector<int> w(I.begin(), I.end());
  for (int x : complement(n, I)) w.push_back(x);
  return Permutation(w);
}

bool compatible(const Permutation& tau, const Subset& I) {
  Subset head(tau.window().begin(), tau.window().begin() + static_cast<std::ptrdiff_t>(I.size()));
  std::sort(head.begin(), head.end());
  return head == I;
}

std::vector<Permutation> compatible_refinements(int n, const Subset& I) {
  std::vector<Permutation> out;
  Subset head = I;
  Subset tail = complement(n, I);
  do {
    Subset t = tail;
    do {
      std::vector<int> w(head);
      w.insert(w.end(), t.begin(), t.end());
      out.emplace_back(w);
    } while (std::next_permutation(t.begin(), t.end()));
  } while (std::next_permutation(head.begin(), head.end()));
  std::sort(out.begin(), out.end());
  return out;
}

Permutation relative_position(const FilteredPhiModule& d, const Permutation& tau) {
  require_valid(d);
  const int n = d.n;
  if (tau.size() != n) throw std::invalid_argument("refinement size mismatch");
  // Column c holds v_{n-1-c} in the basis e_{tau(0)}, ..., e_{tau(n-1)}.
  Matrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      g.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          d.flag[static_cast<std::size_t>(n - 1 - c)][static_cast<std::size_t>(tau(r))];

  // R(a, b) = rank of rows >= a, columns <= b; invariant under upper-triangular
  // multiplication on either side and equal to #{c <= b : w(c) >= a}.
  std::vector<std::vector<long>> R(static_cast<std::size_t>(n + 1), std::vector<long>(static_cast<std::size_t>(n + 1), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Matrix block(static_cast<std::size_t>(n - a), static_cast<std::size_t>(b + 1));
      for (int r = a; r < n; ++r)
        for (int c = 0; c <= b; ++c)
          block.at(static_cast<std::size_t>(r - a), static_cast<std::size_t>(c)) =
              g.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      R[static_cast<std::size_t>(a)][static_cast<std::size_t>(b + 1)] = static_cast<long>(rank(block));
    }
  auto r_at = [&](int a, int b) { return R[static_cast<std::size_t>(a)][static_cast<std::size_t>(b + 1)]; };

  std::vector<int> w(static_cast<std::size_t>(n), -1);
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      if (r_at(a, b) - r_at(a, b - 1) - r_at(a + 1, b) + r_at(a + 1, b - 1) == 1) w[static_cast<std::size_t>(b)] = a;
  Permutation res(w);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      long expect = 0;
      for (int c = 0; c <= b; ++c)
        if (res(c) >= a) ++expect;
      if (expect != r_at(a, b)) throw std::logic_error("rank profile is not a permutation profile");
    }
  return res;
}

std::vector<Vector> permutation_flag(const Permutation& pi) {
  std::vector<Vector> flag;
  for (int j = 0; j < pi.size(); ++j)
    flag.push_back(unit_vector(static_cast<std::size_t>(pi.size()), static_cast<std::size_t>(pi(j))));
  return flag;
}

FilteredPhiModule module_with_flag(int n, long p, int f, std::uint64_t seed, const std::vector<Vector>& flag) {
  Draw draw(seed ^ 0x9e3779b97f4a7c15ULL);
  FilteredPhiModule d;
  d.n = n;
  d.p = p;
  d.f = f;
  d.weights = default_weights(n);
  d.flag = flag;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    d.eigenvalues = draw_eigenvalues(draw, n);
    if (validate(d).empty()) return d;
  }
  throw std::runtime_error("retry budget exhausted drawing eigenvalues");
}

FilteredPhiModule random_module(int n, long p, int f, std::uint64_t seed, FlagMode mode) {
  if (n < 2) throw std::invalid_argument("rank must be at least 2");
  Draw draw(seed);
  const auto un = static_cast<std::size_t>(n);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Vector> flag;
    if (mode == FlagMode::permutation) {
      auto w = Permutation::identity(n).window();
      std::shuffle(w.begin(), w.end(), std::mt19937_64(seed + static_cast<std::uint64_t>(attempt)));
      flag = permutation_flag(Permutation(w));
    } else {
      for (std::size_t j = 0; j < un; ++j) {
        Vector v(un);
        for (auto& x : v) {
          if (mode == FlagMode::mixed)
            x = draw.integer(0, 9) < 6 ? Rational(0) : Rational(draw.integer(-2, 2));
          else
            x = draw.rational(-6, 6, 3);
        }
        flag.push_back(v);
      }
    }
    FilteredPhiModule d;
    d.n = n;
    d.p = p;
    d.f = f;
    d.weights = default_weights(n);
    d.flag = flag;
    d.eigenvalues = draw_eigenvalues(draw, n);
    if (!validate(d).empty()) continue;
    if (mode == FlagMode::generic && !all_minors_nonzero(d)) continue;
    return d;
  }
  throw std::runtime_error("retry budget exhausted");
}

FilteredPhiModule rescale_flag(const FilteredPhiModule& d, const std::vector<Rational>& scale) {
  FilteredPhiModule out = d;
  for (std::size_t j = 0; j < out.flag.size(); ++j)
    for (auto& x : out.flag[j]) x *= scale.at(j);
  return out;
}

FilteredPhiModule rescale_eigenbasis(const FilteredPhiModule& d, const std::vector<Rational>& scale) {
  FilteredPhiModule out = d;
  for (auto& v : out.flag)
    for (std::size_t k = 0; k < v.size(); ++k) v[k] /= scale.at(k);
  return out;
}

}  // namespace phiflag
