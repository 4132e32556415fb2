#include "phiflag/reconstruct.hpp"

#include <algorithm>

namespace phiflag {

namespace {

StepSet sorted_steps(const StepSet& S) {
  StepSet s = S;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) throw std::invalid_argument("recovery needs a nonempty S");
  return s;
}

}  // namespace

RecoveryInput build_recovery_input(const TMap& t, const StepSet& S) {
  RecoveryInput in;
  const auto& d = t.module();
  in.n = d.n;
  in.weights = d.weights;
  in.eigenvalues = d.eigenvalues;
  in.S = sorted_steps(S);
  const std::size_t m = in.S.size();
  const int top = in.S.back();
  for (std::size_t j = 0; j < m; ++j) {
    StepSet chain(in.S.begin(), in.S.begin() + static_cast<std::ptrdiff_t>(j));
    chain.push_back(top);
    in.U.push_back(t.block_image(t.kernel(chain), top));
  }
  in.U_inf = t.block_image(t.inf_domain(in.S), top);
  return in;
}

HomRecovery recover_from_hom(int n, const Subspace& U) {
  if (U.dim() == 0) throw std::invalid_argument("recover_from_hom needs a nonzero space");
  const auto un = static_cast<std::size_t>(n);
  Subspace B(un);
  Matrix stacked(0, un);
  for (const auto& v : U.vectors()) {
    Matrix M = Matrix::from_flat(un, un, v);
    B = sum(B, column_space(M));
    for (std::size_t r = 0; r < un; ++r) stacked.append_row(M.row(r));
  }
  return HomRecovery{kernel(stacked), B};
}

Subspace hom_quotient(int n, const Subspace& A, const Subspace& B) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<Vector> gens;
  for (const auto& b : B.vectors())
    for (const auto& alpha : A.annihilator()) {
      Vector flat = zero_vector(un * un);
      for (std::size_t r = 0; r < un; ++r)
        for (std::size_t c = 0; c < un; ++c) flat[r * un + c] = b[r] * alpha[c];
      gens.push_back(flat);
    }
  return Subspace::span(un * un, gens);
}

std::vector<Subspace> recover_filtration(const RecoveryInput& input) {
  const int n = input.n;
  const StepSet& S = input.S;
  const std::size_t m = S.size();
  if (input.U.size() != m) throw std::invalid_argument("one U per chain member expected");
  std::vector<Subspace> out(m, Subspace(static_cast<std::size_t>(n)));
  HomRecovery last = recover_from_hom(n, input.U_inf);
  if (!(last.A == last.B)) throw InvariantFailure("kernel and image of the top space differ");
  out[m - 1] = last.B;
  for (std::size_t j = 1; j < m; ++j) out[j - 1] = recover_from_hom(n, input.U[j]).A;

  for (std::size_t j = 0; j < m; ++j) {
    if (out[j].dim() != static_cast<std::size_t>(n - S[j])) throw InvariantFailure("recovered step has wrong dimension");
    if (j + 1 < m && !out[j].contains(out[j + 1])) throw InvariantFailure("recovered steps are not a chain");
  }
  return out;
}

RoundtripReport roundtrip(const TMap& t, const StepSet& S) {
  const auto& d = t.module();
  RecoveryInput in = build_recovery_input(t, S);
  const int top = in.S.back();
  const Subspace top_fil = filtration_subspace(d, top);
  RoundtripReport rep;
  rep.identities_hold = in.U_inf == hom_quotient(d.n, top_fil, top_fil);
  for (std::size_t j = 0; j < in.S.size(); ++j) {
    Subspace A = j == 0 ? Subspace::full(static_cast<std::size_t>(d.n)) : filtration_subspace(d, in.S[j - 1]);
    if (!(in.U[j] == hom_quotient(d.n, A, top_fil))) rep.identities_hold = false;
  }
  auto rec = recover_filtration(in);
  rep.recovered = true;
  for (std::size_t j = 0; j < in.S.size(); ++j)
    if (!(rec[j] == filtration_subspace(d, in.S[j]))) rep.recovered = false;
  return rep;
}

}  // namespace phiflag
