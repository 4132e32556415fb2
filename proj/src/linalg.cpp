#include "phiflag/linalg.hpp"

#include <cctype>
#include <utility>

namespace phiflag {

namespace {

bool valid_integer(const std::string& s) {
  std::size_t k = 0;
  if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
  if (k == s.size()) return false;
  for (; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  return true;
}

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("ambient dimension mismatch");
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class p(num), q(den);
  if (q == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

Vector unit_vector(std::size_t n, std::size_t k) {
  Vector v = zero_vector(n);
  v.at(k) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.at(r, c) = cols[c][r];
  }
  return m;
}

Matrix Matrix::from_flat(std::size_t rows, std::size_t cols, const Vector& v) {
  if (v.size() != rows * cols) throw std::invalid_argument("flat size mismatch");
  Matrix m(rows, cols);
  m.a_ = v;
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

void Matrix::append_row(const Vector& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  a_.insert(a_.end(), v.begin(), v.end());
  ++rows_;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

bool Matrix::is_zero() const { return phiflag::is_zero(a_); }

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j) + b.at(i, j);
  return m;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) *= s;
  return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector out = zero_vector(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (v[j] != 0) out[i] += a.at(i, j) * v[j];
  return out;
}

RrefResult rref(const Matrix& m) {
  RrefResult res{m, {}};
  Matrix& a = res.form;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < a.cols() && lead < a.rows(); ++c) {
    std::size_t piv = lead;
    while (piv < a.rows() && a.at(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(piv, j), a.at(lead, j));
    Rational inv = 1 / a.at(lead, c);
    for (std::size_t j = c; j < a.cols(); ++j) a.at(lead, j) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead || a.at(r, c) == 0) continue;
      Rational f = a.at(r, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (a.at(lead, j) != 0) a.at(r, j) -= f * a.at(lead, j);
    }
    res.pivots.push_back(c);
    ++lead;
  }
  return res;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  Matrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a.at(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(c, j));
      det = -det;
    }
    det *= a.at(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a.at(r, c) == 0) continue;
      Rational f = a.at(r, c) / a.at(c, c);
      for (std::size_t j = c; j < n; ++j) a.at(r, j) -= f * a.at(c, j);
    }
  }
  return det;
}

Subspace::Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
  Subspace s(ambient);
  if (vectors.empty()) return s;
  auto r = rref(Matrix::from_rows(vectors, ambient));
  for (std::size_t i = 0; i < r.pivots.size(); ++i) s.basis_.append_row(r.form.row(i));
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  std::vector<Vector> e;
  for (std::size_t k = 0; k < ambient; ++k) e.push_back(unit_vector(ambient, k));
  return span(ambient, e);
}

std::vector<Vector> Subspace::vectors() const {
  std::vector<Vector> out;
  for (std::size_t r = 0; r < basis_.rows(); ++r) out.push_back(basis_.row(r));
  return out;
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("ambient dimension mismatch");
  // Reduce v against the RREF basis; v lies in the span iff the remainder is zero.
  Vector w = v;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    std::size_t p = 0;
    while (basis_.at(r, p) == 0) ++p;
    if (w[p] == 0) continue;
    Rational f = w[p];
    for (std::size_t j = 0; j < ambient_; ++j) w[j] -= f * basis_.at(r, j);
  }
  return phiflag::is_zero(w);
}

bool Subspace::contains(const Subspace& other) const {
  require_same_ambient(*this, other);
  for (const auto& v : other.vectors())
    if (!contains(v)) return false;
  return true;
}

std::vector<Vector> Subspace::annihilator() const {
  if (dim() == 0) return Subspace::full(ambient_).vectors();
  return kernel(basis_).vectors();
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

Subspace kernel(const Matrix& m) {
  auto r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(n);
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.form.at(i, free);
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  auto r = rref(aug);
  Vector x = zero_vector(m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    if (r.pivots[i] == m.cols()) return std::nullopt;
    x[r.pivots[i]] = r.form.at(i, m.cols());
  }
  return x;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  auto v = a.vectors();
  auto w = b.vectors();
  v.insert(v.end(), w.begin(), w.end());
  return Subspace::span(a.ambient(), v);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  auto rows = a.annihilator();
  auto more = b.annihilator();
  rows.insert(rows.end(), more.begin(), more.end());
  if (rows.empty()) return Subspace::full(a.ambient());
  return kernel(Matrix::from_rows(rows, a.ambient()));
}

Subspace image(const Matrix& m, const Subspace& s) {
  if (m.cols() != s.ambient()) throw std::invalid_argument("image: dimension mismatch");
  std::vector<Vector> out;
  for (const auto& v : s.vectors()) out.push_back(m * v);
  return Subspace::span(m.rows(), out);
}

Subspace column_space(const Matrix& m) {
  std::vector<Vector> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return Subspace::span(m.rows(), cols);
}

}  // namespace phiflag
