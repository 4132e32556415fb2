#include "phiflag/coxeter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace phiflag {

namespace {

void check_generator(const Permutation& w, int i) {
  if (i < 1 || i > w.size() - 1) throw std::invalid_argument("generator index out of range");
}

void check_word_guard(const Permutation& w) {
  if (w.size() > 7) throw std::invalid_argument("reduced-word enumeration limited to n <= 7");
}

void collect_words(const Permutation& w, std::map<Permutation, std::vector<Word>>& memo) {
  if (memo.count(w)) return;
  std::vector<Word> words;
  if (length(w) == 0) {
    words.push_back({});
  } else {
    for (int i = 1; i < w.size(); ++i) {
      if (w(i - 1) < w(i)) continue;
      Permutation shorter = w * Permutation::simple(w.size(), i);
      collect_words(shorter, memo);
      for (Word word : memo.at(shorter)) {
        word.push_back(i);
        words.push_back(std::move(word));
      }
    }
  }
  std::sort(words.begin(), words.end());
  memo.emplace(w, std::move(words));
}

// r(a, b) = #{c <= b : w(c) <= a}.
int rank_count(const Permutation& w, int a, int b) {
  int r = 0;
  for (int c = 0; c <= b; ++c)
    if (w(c) <= a) ++r;
  return r;
}

}  // namespace

Permutation::Permutation(std::vector<int> window) : w_(std::move(window)) {
  std::vector<bool> seen(w_.size(), false);
  for (int x : w_) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("window is not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  std::iota(w.begin(), w.end(), 0);
  return Permutation(w);
}

Permutation Permutation::longest(int n) {
  std::vector<int> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = n - 1 - j;
  return Permutation(w);
}

Permutation Permutation::simple(int n, int i) {
  if (i < 1 || i > n - 1) throw std::invalid_argument("generator index out of range");
  return transposition(n, i - 1, i);
}

Permutation Permutation::transposition(int n, int a, int b) {
  auto w = identity(n).w_;
  std::swap(w.at(static_cast<std::size_t>(a)), w.at(static_cast<std::size_t>(b)));
  return Permutation(w);
}

Permutation Permutation::from_word(int n, const Word& word) {
  Permutation p = identity(n);
  for (int i : word) p = p * simple(n, i);
  return p;
}

std::vector<Permutation> Permutation::all(int n) {
  std::vector<Permutation> out;
  auto w = identity(n).w_;
  do {
    out.emplace_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(w_.size());
  for (std::size_t j = 0; j < w_.size(); ++j) inv[static_cast<std::size_t>(w_[j])] = static_cast<int>(j);
  return Permutation(inv);
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t j = 0; j < w_.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(w_[j]);
  }
  return s + "]";
}

Permutation operator*(const Permutation& u, const Permutation& w) {
  if (u.size() != w.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> out(w.w_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = u(w(static_cast<int>(x)));
  return Permutation(out);
}

int length(const Permutation& w) {
  int inv = 0;
  for (int a = 0; a < w.size(); ++a)
    for (int b = a + 1; b < w.size(); ++b)
      if (w(a) > w(b)) ++inv;
  return inv;
}

std::vector<Word> reduced_words(const Permutation& w) {
  check_word_guard(w);
  std::map<Permutation, std::vector<Word>> memo;
  collect_words(w, memo);
  return memo.at(w);
}

bool in_support(const Permutation& w, int i) {
  check_generator(w, i);
  for (int k = 0; k < i; ++k)
    if (w(k) >= i) return true;
  return false;
}

std::set<int> support(const Permutation& w) {
  std::set<int> s;
  for (int i = 1; i < w.size(); ++i)
    if (in_support(w, i)) s.insert(i);
  return s;
}

int crossing_number(const Permutation& w, int i) {
  check_generator(w, i);
  int d = 0;
  for (int k = i; k < w.size(); ++k)
    if (w(k) < i) ++d;
  return d;
}

int pair_count(const Permutation& w, int i) {
  check_generator(w, i);
  int c = 0;
  for (int j = 0; j < i; ++j)
    for (int k = i; k < w.size(); ++k)
      if (w(k) < w(j)) ++c;
  return c;
}

int min_generator_multiplicity(const Permutation& w, int i) {
  check_generator(w, i);
  auto words = reduced_words(w);
  int best = -1;
  for (const auto& word : words) {
    int c = static_cast<int>(std::count(word.begin(), word.end(), i));
    if (best < 0 || c < best) best = c;
  }
  return best;
}

bool bruhat_leq(const Permutation& u, const Permutation& w) {
  if (u.size() != w.size()) throw std::invalid_argument("permutation size mismatch");
  for (int a = 0; a < u.size(); ++a)
    for (int b = 0; b < u.size(); ++b)
      if (rank_count(u, a, b) < rank_count(w, a, b)) return false;
  return true;
}

int reflections_dropping(const Permutation& w, int i) {
  check_generator(w, i);
  int count = 0;
  for (int a = 0; a < w.size(); ++a)
    for (int b = a + 1; b < w.size(); ++b)
      if (!in_support(Permutation::transposition(w.size(), a, b) * w, i)) ++count;
  return count;
}

Word weil_word(int i, int delta_minus, int delta_plus) {
  Word word{i};
  for (int k = 1; k <= delta_minus; ++k) word.push_back(i - k);
  for (int k = 1; k <= delta_plus; ++k) word.push_back(i + k);
  return word;
}

MultfreeResult multfree_decompose(const Permutation& w, int i) {
  check_generator(w, i);
  if (crossing_number(w, i) != 1) throw std::invalid_argument("multfree_decompose needs crossing number 1");
  const int n = w.size();

  std::map<Permutation, MultfreeResult> shapes;
  for (int dm = 0; dm <= i - 1; ++dm)
    for (int dp = 0; dp <= n - 1 - i; ++dp) {
      WeilForm form = dm == 0 ? (dp == 0 ? WeilForm::single : WeilForm::ascending)
                              : (dp == 0 ? WeilForm::descending : WeilForm::both);
      Word word = weil_word(i, dm, dp);
      shapes.emplace(Permutation::from_word(n, word), MultfreeResult{Permutation::identity(n), form, dm, dp, word});
    }

  auto candidates = Permutation::all(n);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Permutation& a, const Permutation& b) { return length(a) < length(b); });
  for (const auto& prefix : candidates) {
    if (in_support(prefix, i)) continue;
    auto it = shapes.find(prefix * w);
    if (it == shapes.end()) continue;
    MultfreeResult res = it->second;
    res.prefix = prefix;
    return res;
  }
  throw std::runtime_error("no multiplicity-free shape reached for " + w.str());
}

}  // namespace phiflag
