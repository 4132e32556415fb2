// The symmetric group S_n as a Coxeter group of type A_{n-1}.
//
// Permutations use window notation w[j] = w(j) on {0..n-1}. Products are
// composition of functions: (u * w)(x) = u(w(x)). The simple generator s_i,
// 1 <= i <= n-1, swaps i-1 and i; a word (a_1,...,a_k) denotes s_{a_1} * ... * s_{a_k}.
#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace phiflag {

using Word = std::vector<int>;

class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless window is a bijection of {0..n-1}.
  explicit Permutation(std::vector<int> window);

  static Permutation identity(int n);
  static Permutation longest(int n);
  static Permutation simple(int n, int i);
  static Permutation transposition(int n, int a, int b);
  static Permutation from_word(int n, const Word& word);
  /// All n! permutations in lexicographic window order.
  static std::vector<Permutation> all(int n);

  int size() const { return static_cast<int>(w_.size()); }
  int operator()(int j) const { return w_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& window() const { return w_; }
  Permutation inverse() const;
  std::string str() const;

  friend Permutation operator*(const Permutation& u, const Permutation& w);
  friend bool operator==(const Permutation& a, const Permutation& b) { return a.w_ == b.w_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.w_ < b.w_; }

 private:
  std::vector<int> w_;
};

int length(const Permutation& w);
/// Every reduced word of w, sorted lexicographically. Requires n <= 7.
std::vector<Word> reduced_words(const Permutation& w);
/// Generators occurring in a (every) reduced word.
std::set<int> support(const Permutation& w);
bool in_support(const Permutation& w, int i);
/// #{k >= i : w(k) < i}.
int crossing_number(const Permutation& w, int i);
/// #{(j,k) : j < i <= k, w(k) < w(j)}.
int pair_count(const Permutation& w, int i);
/// Minimum number of occurrences of s_i over all reduced words (brute force, n <= 7).
int min_generator_multiplicity(const Permutation& w, int i);
/// Bruhat order through rank matrices.
bool bruhat_leq(const Permutation& u, const Permutation& w);
/// Number of transpositions t with s_i outside the support of t * w.
int reflections_dropping(const Permutation& w, int i);

/// The four multiplicity-free shapes around s_i.
enum class WeilForm { single = 1, descending = 2, ascending = 3, both = 4 };

struct MultfreeResult {
  Permutation prefix;  ///< w' with s_i not in its support
  WeilForm form;
  int delta_minus = 0;
  int delta_plus = 0;
  Word word;           ///< the reduced word of prefix * w in the chosen shape
};

/// The reduced word of a shape: s_i s_{i-1}..s_{i-dm} s_{i+1}..s_{i+dp}.
Word weil_word(int i, int delta_minus, int delta_plus);
/// Requires crossing_number(w, i) == 1; throws std::invalid_argument otherwise and
/// std::runtime_error if no s_i-free prefix reaches one of the shapes.
MultfreeResult multfree_decompose(const Permutation& w, int i);

}  // namespace phiflag
