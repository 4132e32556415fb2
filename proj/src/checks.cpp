#include "phiflag/checks.hpp"

#include <functional>
#include <random>

#include "phiflag/reconstruct.hpp"
#include "phiflag/skeleton.hpp"
#include "phiflag/t_map.hpp"

namespace phiflag {

namespace {

void run(std::vector<CheckResult>& out, const std::string& name, const std::function<std::string()>& body) {
  CheckResult r{name, false, ""};
  try {
    r.detail = body();
    r.pass = r.detail.empty();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(r);
}

/// Like run, but the body may also leave an informational note on a pass.
void run_noted(std::vector<CheckResult>& out, const std::string& name,
               const std::function<std::string(std::string&)>& body) {
  CheckResult r{name, false, ""};
  try {
    std::string note;
    r.detail = body(note);
    r.pass = r.detail.empty();
    if (r.pass) r.detail = note;
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(r);
}

std::vector<StepSet> all_step_sets(int n) {
  std::vector<StepSet> out;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    StepSet s;
    for (int i = 1; i < n; ++i)
      if (mask & (1u << (i - 1))) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

std::string steps_str(const StepSet& S) {
  std::string s = "{";
  for (std::size_t k = 0; k < S.size(); ++k) s += (k ? "," : "") + std::to_string(S[k]);
  return s + "}";
}

std::vector<Rational> random_scales(std::mt19937_64& gen, std::size_t count) {
  std::uniform_int_distribution<long> num(1, 5), den(1, 4), sign(0, 1);
  std::vector<Rational> out;
  for (std::size_t k = 0; k < count; ++k) {
    Rational q(num(gen) * (sign(gen) ? -1 : 1), den(gen));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

bool same_classes(const std::vector<SubsetClass>& a, const std::vector<SubsetClass>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].I != b[k].I || a[k].split != b[k].split || a[k].cosplit != b[k].cosplit ||
        a[k].critical != b[k].critical || a[k].very_critical != b[k].very_critical)
      return false;
  return true;
}

// Matrices written in the basis e'_k = s_k e_k.
Subspace conjugate(const Subspace& U, const std::vector<Rational>& s) {
  const std::size_t n = s.size();
  std::vector<Vector> out;
  for (auto v : U.vectors()) {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r * n + c] = v[r * n + c] * s[c] / s[r];
    out.push_back(v);
  }
  return Subspace::span(U.ambient(), out);
}

Subspace rebase(const Subspace& U, const std::vector<Rational>& s) {
  std::vector<Vector> out;
  for (auto v : U.vectors()) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] /= s[k];
    out.push_back(v);
  }
  return Subspace::span(U.ambient(), out);
}

struct Snapshot {
  std::vector<std::size_t> kernel_dims;
  std::vector<SubsetClass> classes;
  std::vector<Subspace> images;
  PiSkeleton skeleton;
  std::vector<Subspace> recovered;
};

Snapshot snapshot(const TMap& t) {
  Snapshot s;
  const int n = t.n();
  for (const auto& S : all_step_sets(n)) s.kernel_dims.push_back(t.kernel(S).dim());
  s.classes = classify(t);
  for (const auto& S : all_step_sets(n))
    for (int i : S) {
      s.images.push_back(kernel_image_in_homfil(t, S, i).kernel_side);
      s.images.push_back(inf_image_in_homfil(t, S, i).kernel_side);
    }
  s.skeleton = build_pi(t);
  s.recovered = recover_filtration(build_recovery_input(t, all_steps(n)));
  return s;
}

std::string compare(const Snapshot& a, const Snapshot& b, const std::vector<Rational>* basis_scale) {
  if (a.kernel_dims != b.kernel_dims) return "kernel dimensions changed";
  if (!same_classes(a.classes, b.classes)) return "classification changed";
  if (!skeleton_equal(a.skeleton, b.skeleton)) return "skeleton changed";
  for (std::size_t k = 0; k < a.images.size(); ++k) {
    Subspace x = basis_scale ? conjugate(a.images[k], *basis_scale) : a.images[k];
    if (!(x == b.images[k])) return "image subspace changed";
  }
  for (std::size_t k = 0; k < a.recovered.size(); ++k) {
    Subspace x = basis_scale ? rebase(a.recovered[k], *basis_scale) : a.recovered[k];
    if (!(x == b.recovered[k])) return "recovered filtration changed";
  }
  return "";
}

}  // namespace

std::vector<CheckResult> check_module(const FilteredPhiModule& d, const CheckOptions& opt) {
  std::vector<CheckResult> out;
  auto violations = validate(d);
  if (!violations.empty()) {
    out.push_back({"valid", false, violations.front()});
    return out;
  }
  const int n = d.n;
  const auto un = static_cast<std::size_t>(n);
  const TMap t(d);
  const Permutation w0 = Permutation::longest(n);

  run(out, "kernel_formula", [&]() -> std::string {
    for (const auto& S : all_step_sets(n)) {
      long got = static_cast<long>(t.kernel(S).dim());
      if (got != kernel_formula_dim(n, S))
        return "S=" + steps_str(S) + " kernel " + std::to_string(got) + " formula " +
               std::to_string(kernel_formula_dim(n, S));
    }
    return "";
  });

  run(out, "surjectivity", [&]() -> std::string {
    Subspace hom = homfil_basis(d);
    if (hom.dim() != un * (un + 1) / 2) return "homfil dimension";
    std::vector<Vector> Ts;
    for (std::size_t k = 0; k < t.subsets().size(); ++k) Ts.push_back(t.T(k).flat());
    Subspace spanT = Subspace::span(un * un, Ts);
    if (spanT.contains(Matrix::identity(un).flat())) return "identity lies in the span of the T operators";
    if (!(sum(spanT, Subspace::span(un * un, {Matrix::identity(un).flat()})) == hom)) return "span differs from homfil";
    return "";
  });

  run(out, "classification", [&]() -> std::string {
    auto classes = classify(t);
    if (n <= 3)
      for (const auto& c : classes)
        if (c.very_critical) return "very critical subset for n <= 3";
    return "";
  });

  run(out, "plucker_support_equivalence", [&]() -> std::string {
    for (const auto& I : proper_subsets(n)) {
      const int i = static_cast<int>(I.size());
      std::vector<Vector> eI;
      for (int x : I) eI.push_back(unit_vector(un, static_cast<std::size_t>(x)));
      bool meets_zero = intersect(filtration_subspace(d, i), Subspace::span(un, eI)).dim() == 0;
      bool coeff = fil_max(d, i).coeff(complement(n, I)) != 0;
      auto taus = opt.refinements ? compatible_refinements(n, I) : std::vector<Permutation>{canonical_refinement(n, I)};
      for (const auto& tau : taus) {
        bool absent = !in_support(relative_position(d, tau) * w0, i);
        if (absent != meets_zero || absent != coeff) return "disagreement at I=" + subset_str(I) + " tau=" + tau.str();
      }
    }
    return "";
  });

  run(out, "operator_shape", [&]() -> std::string {
    for (std::size_t k = 0; k < t.subsets().size(); ++k) {
      const Subset& I = t.subsets()[k];
      const Matrix& T = t.T(k);
      for (int j = 0; j < n; ++j) {
        bool in_I = std::binary_search(I.begin(), I.end(), j);
        for (int r = 0; r < n; ++r) {
          Rational x = T.at(static_cast<std::size_t>(r), static_cast<std::size_t>(j));
          bool r_in = std::binary_search(I.begin(), I.end(), r);
          if (in_I) {
            if (x != 0) return "T" + subset_str(I) + " does not kill e_" + std::to_string(j);
          } else if (!r_in) {
            Rational want = (!t.split(k) && r == j) ? Rational(1) : Rational(0);
            if (x != want) return "T" + subset_str(I) + " has the wrong shape on e_" + std::to_string(j);
          }
        }
      }
    }
    return "";
  });

  run(out, "fil_2nd_max_dims", [&]() -> std::string {
    for (const auto& S : all_step_sets(n))
      for (int i : S) {
        if (fil_2nd_max(d, S, i).dim() != fil_2nd_max_dim(n, S, i)) return "S=" + steps_str(S) + " i=" + std::to_string(i);
        Subspace top = wedge_span(n, {{filtration_subspace(d, i), n - i}});
        WedgeVector line = fil_max(d, i);
        if (!(top == Subspace::span(line.coords.size(), {line.coords}))) return "last step is not the Plucker line";
      }
    return "";
  });

  run(out, "image_characterizations", [&]() -> std::string {
    for (const auto& S : all_step_sets(n))
      for (int i : S) {
        if (!kernel_image_in_homfil(t, S, i).holds()) return "kernel image S=" + steps_str(S) + " i=" + std::to_string(i);
        if (!inf_image_in_homfil(t, S, i).holds()) return "inf image S=" + steps_str(S) + " i=" + std::to_string(i);
      }
    return "";
  });

  run(out, "cosocle_duality", [&]() -> std::string {
    for (const auto& I : proper_subsets(n)) {
      bool cos = cosplit(d, all_steps(n), I);
      Subset Ic = complement(n, I);
      bool split_c = t.split(t.position(Ic));
      if (n == 2 && !cos) return "n=2 subset not cosplit";
      if (n >= 3 && cos && !split_c) return "cosplit without split complement at " + subset_str(I);
      if (n == 3 && cos != split_c) return "n=3 equivalence fails at " + subset_str(I);
    }
    return "";
  });

  run(out, "homfilR_bijectivity", [&]() -> std::string {
    std::vector<Permutation> taus = opt.all_tau ? Permutation::all(n) : std::vector<Permutation>{Permutation::identity(n)};
    for (const auto& tau : taus) {
      Permutation w = relative_position(d, tau) * w0;
      for (int i = 1; i < n; ++i) {
        HomfilR R = homfilR(d, tau, i);
        if (R.image_rank != 2) return "f_i not surjective";
        if (R.space.dim() != 2 + nilradical_overlap_dim(relative_position(d, tau), i))
          return "dim homfilR differs from 2 + nilradical overlap tau=" + tau.str() + " i=" + std::to_string(i);
        if (R.bijective() == in_support(w, i)) return "bijectivity mismatch tau=" + tau.str() + " i=" + std::to_string(i);
      }
    }
    return "";
  });

  // T_I always satisfies the three membership sub-checks; it spans ker f_i
  // exactly when the nilradical overlap is one-dimensional. Crossing number 1
  // does not force that (w_R = id, n = 3, i = 1 has overlap 2), so those
  // configurations are counted in the detail rather than treated as failures.
  run_noted(out, "crossing_one_kernel", [&](std::string& note) -> std::string {
    int configs = 0, wide = 0;
    for (const auto& c : classify(t)) {
      if (c.crossing != 1) continue;
      ++configs;
      CritReport r = crit_kernel_report(t, c.I);
      if (!r.nonzero || !r.in_homfilR || !r.f_zero) throw InvariantFailure("T_I sub-check fails at " + subset_str(c.I));
      if (r.kernel_dim != r.overlap_dim) throw InvariantFailure("dim ker f_i differs from overlap at " + subset_str(c.I));
      if (r.spans != (r.overlap_dim == 1)) throw InvariantFailure("spanning mismatch at " + subset_str(c.I));
      if (r.overlap_dim != 1) ++wide;
    }
    if (wide > 0)
      note = std::to_string(wide) + "/" + std::to_string(configs) +
             " crossing-one configurations have ker f_i of dim >= 2 (T_I does not span it)";
    return "";
  });

  run(out, "reconstruction", [&]() -> std::string {
    for (const auto& S : all_step_sets(n)) {
      if (S.empty()) continue;
      auto rep = roundtrip(t, S);
      if (!rep.identities_hold) return "Hom identities fail for S=" + steps_str(S);
      if (!rep.recovered) return "recovery fails for S=" + steps_str(S);
    }
    return "";
  });

  run(out, "skeleton", [&]() -> std::string {
    PiSkeleton pi = build_pi(t);
    long full = (1L << n) - 1 - static_cast<long>(n) * (n + 1) / 2;
    if (pi.top_alg_multiplicity != full) return "top multiplicity";
    for (const auto& S : all_step_sets(n)) {
      PiSkeleton s = build_pi_S(t, S);
      if (s.top_alg_multiplicity != kernel_formula_dim(n, S)) return "restricted multiplicity S=" + steps_str(S);
    }
    if (build_pi_S(t, {1}).top_alg_multiplicity != 0 || build_pi_S(t, {n - 1}).top_alg_multiplicity != 0)
      return "end steps must give multiplicity 0";
    PiSkeleton flat = build_pi_flat(t);
    if (n == 3 && !(flat.top_alg_multiplicity == pi.top_alg_multiplicity && flat.socle == pi.socle &&
                    flat.cosocle == pi.cosocle && flat.middle_nonsplit == pi.middle_nonsplit))
      return "n=3 flat skeleton differs";
    return "";
  });

  run(out, "choice_invariance", [&]() -> std::string {
    std::mt19937_64 gen(opt.seed * 7919 + 17);
    Snapshot base = snapshot(t);
    Snapshot scaled_T = snapshot(TMap(d, random_scales(gen, t.subsets().size())));
    if (auto e = compare(base, scaled_T, nullptr); !e.empty()) return "T rescaling: " + e;
    Snapshot scaled_flag = snapshot(TMap(rescale_flag(d, random_scales(gen, un))));
    if (auto e = compare(base, scaled_flag, nullptr); !e.empty()) return "flag rescaling: " + e;
    auto s = random_scales(gen, un);
    Snapshot scaled_basis = snapshot(TMap(rescale_eigenbasis(d, s)));
    if (auto e = compare(base, scaled_basis, &s); !e.empty()) return "eigenbasis rescaling: " + e;
    return "";
  });

  return out;
}

std::vector<CheckResult> check_coxeter(int n) {
  std::vector<CheckResult> out;
  auto perms = Permutation::all(n);
  run(out, "multiplicity_classes", [&]() -> std::string {
    for (const auto& w : perms)
      for (int i = 1; i < n; ++i) {
        int m = min_generator_multiplicity(w, i);
        int d = crossing_number(w, i);
        if (std::min(m, 2) != std::min(d, 2)) return "class mismatch at " + w.str();
        if ((m == 0) == in_support(w, i)) return "support mismatch at " + w.str();
        if (pair_count(w, i) < d) return "pair count below crossing number at " + w.str();
      }
    return "";
  });
  run(out, "reduced_words", [&]() -> std::string {
    for (const auto& w : perms)
      for (const auto& word : reduced_words(w)) {
        if (static_cast<int>(word.size()) != length(w)) return "word length";
        if (!(Permutation::from_word(n, word) == w)) return "word does not multiply back";
      }
    return "";
  });
  run(out, "multfree", [&]() -> std::string {
    for (const auto& w : perms)
      for (int i = 1; i < n; ++i) {
        if (crossing_number(w, i) != 1) continue;
        auto r = multfree_decompose(w, i);
        if (in_support(r.prefix, i)) return "prefix contains the generator";
        if (!(r.prefix * w == Permutation::from_word(n, r.word))) return "product differs from the shape";
        if (r.word != weil_word(i, r.delta_minus, r.delta_plus)) return "word differs from the tag";
      }
    return "";
  });
  return out;
}

std::vector<CheckResult> check_ext_dims(const FilteredPhiModule& d, int max_d, std::uint64_t seed) {
  std::vector<CheckResult> out;
  run(out, "ext_dims", [&]() -> std::string {
    std::vector<FilteredPhiModule> mods{d};
    for (int k = 1; k <= max_d; ++k) {
      if (k > 1) {
        FilteredPhiModule other = random_module(d.n, d.p, d.f, seed + static_cast<std::uint64_t>(k), FlagMode::mixed);
        other.eigenvalues = d.eigenvalues;
        mods.push_back(other);
      }
      ExtDims e = ext_dims(mods);
      if (!e.consistent()) return "inconsistent counts for d=" + std::to_string(k);
    }
    return "";
  });
  return out;
}

}  // namespace phiflag
