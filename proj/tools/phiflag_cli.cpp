// Command-line front end: instance validation, classification, the t map,
// skeletons, filtration recovery, Weyl group invariants and the check suite.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "phiflag/checks.hpp"
#include "phiflag/io.hpp"

using namespace phiflag;

namespace {

constexpr const char* kSchema = "phiflag.report/1";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<FilteredPhiModule> load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  try {
    return modules_from_json(j);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

void require_all_valid(const std::vector<FilteredPhiModule>& mods) {
  for (const auto& d : mods) {
    auto v = validate(d);
    if (!v.empty()) throw InputError("invalid instance: " + v.front());
  }
}

void require_steps(const StepSet& S, int n) {
  for (int i : S)
    if (i < 1 || i > n - 1) throw InputError("step index out of range: " + std::to_string(i));
}

Json report(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string subspace_text(const Subspace& s) {
  std::ostringstream out;
  out << "span{";
  auto vs = s.vectors();
  for (std::size_t k = 0; k < vs.size(); ++k) {
    out << (k ? ", " : "") << "(";
    for (std::size_t a = 0; a < vs[k].size(); ++a) out << (a ? "," : "") << vs[k][a].get_str();
    out << ")";
  }
  return out.str() + "}";
}

int cmd_validate(const std::string& path, bool json) {
  auto mods = load(path);
  Json r = report("validate");
  Json arr = Json::array();
  bool ok = true;
  for (const auto& d : mods) {
    auto v = validate(d);
    ok = ok && v.empty();
    Json e;
    e["ok"] = v.empty();
    e["violations"] = v;
    arr.push_back(e);
  }
  r["embeddings"] = arr;
  r["ok"] = ok;
  if (json) {
    emit(r);
  } else {
    for (std::size_t k = 0; k < mods.size(); ++k) {
      auto v = validate(mods[k]);
      std::cout << "embedding " << k << ": " << (v.empty() ? "ok" : "invalid") << "\n";
      for (const auto& s : v) std::cout << "  " << s << "\n";
    }
  }
  return ok ? 0 : 1;
}

int cmd_classify(const std::string& path, bool json) {
  auto mods = load(path);
  require_all_valid(mods);
  Json r = report("classify");
  Json arr = Json::array();
  for (const auto& d : mods) {
    TMap t(d);
    auto classes = classify(t);
    Json e;
    e["subsets"] = classification_json(classes);
    Json vc = Json::array();
    for (const auto& c : classes)
      if (c.very_critical) vc.push_back(subset_json(c.I));
    e["very_critical"] = vc;
    arr.push_back(e);
    if (!json) {
      std::cout << "I            split cosplit critical very_critical crossing\n";
      for (const auto& c : classes) {
        std::string name = subset_str(c.I);
        name.resize(12, ' ');
        std::cout << name << " " << c.split << "     " << c.cosplit << "       " << c.critical << "        "
                  << c.very_critical << "             " << c.crossing << "\n";
      }
    }
  }
  r["embeddings"] = arr;
  if (json) emit(r);
  return 0;
}

int cmd_tmap(const std::string& path, const std::string& steps, bool json) {
  auto mods = load(path);
  require_all_valid(mods);
  Json r = report("tmap");
  Json arr = Json::array();
  bool ok = true;
  for (const auto& d : mods) {
    StepSet S = steps.empty() ? all_steps(d.n) : parse_steps(steps);
    require_steps(S, d.n);
    TMap t(d);
    Json e;
    e["S"] = S;
    Json ops = Json::array();
    for (std::size_t k = 0; k < t.subsets().size(); ++k) {
      Json o;
      o["I"] = subset_json(t.subsets()[k]);
      o["split"] = t.split(k);
      o["T"] = matrix_json(t.T(k));
      ops.push_back(o);
    }
    e["operators"] = ops;
    e["classification"] = classification_json(classify(t));
    Subspace K = t.kernel(S);
    long formula = kernel_formula_dim(d.n, S);
    e["kernel_dim"] = K.dim();
    e["formula_dim"] = formula;
    e["kernel_basis"] = matrix_json(K.basis());
    Json images = Json::array();
    bool images_ok = true;
    for (int i : S) {
      auto ker = kernel_image_in_homfil(t, S, i);
      auto inf = inf_image_in_homfil(t, S, i);
      Json im;
      im["i"] = i;
      im["kernel_image_dim"] = ker.kernel_side.dim();
      im["inf_image_dim"] = inf.kernel_side.dim();
      im["kernel_image_ok"] = ker.holds();
      im["inf_image_ok"] = inf.holds();
      images_ok = images_ok && ker.holds() && inf.holds();
      images.push_back(im);
    }
    e["images"] = images;
    Json inv;
    inv["kernel_formula"] = static_cast<long>(K.dim()) == formula;
    inv["images"] = images_ok;
    ok = ok && static_cast<long>(K.dim()) == formula && images_ok;
    e["invariants"] = inv;
    arr.push_back(e);
    if (!json) {
      std::cout << "kernel dim " << K.dim() << " (formula " << formula << ")\n";
      for (const auto& im : images)
        std::cout << "  i=" << im["i"] << " kernel image dim " << im["kernel_image_dim"] << ", inf image dim "
                  << im["inf_image_dim"] << "\n";
      std::cout << (ok ? "PASS" : "FAIL") << "\n";
    }
  }
  r["embeddings"] = arr;
  r["ok"] = ok;
  if (json) emit(r);
  return ok ? 0 : 1;
}

int cmd_skeleton(const std::string& path, const std::string& steps, bool flat, bool json) {
  auto mods = load(path);
  require_all_valid(mods);
  Json r = report("skeleton");
  Json arr = Json::array();
  std::string text;
  for (const auto& d : mods) {
    TMap t(d);
    PiSkeleton s;
    if (flat) {
      if (!steps.empty()) throw InputError("--flat and --S cannot be combined");
      s = build_pi_flat(t);
    } else if (steps.empty()) {
      s = build_pi(t);
    } else {
      StepSet S = parse_steps(steps);
      require_steps(S, d.n);
      s = build_pi_S(t, S);
    }
    Json e = skeleton_json(s);
    e["diagram"] = s.diagram();
    arr.push_back(e);
    text += s.diagram();
  }
  r["embeddings"] = arr;
  ExtDims ed = ext_dims(mods);
  Json ej;
  ej["per_embedding"] = ed.per_embedding;
  ej["aggregate_closed"] = ed.aggregate_closed;
  ej["aggregate_assembled"] = ed.aggregate_assembled;
  ej["consistent"] = ed.consistent();
  r["ext_dims"] = ej;
  if (!json) std::cout << text;
  emit(r);
  return ed.consistent() ? 0 : 1;
}

int cmd_reconstruct(const std::string& path, const std::string& steps, bool json) {
  auto mods = load(path);
  require_all_valid(mods);
  Json r = report("reconstruct");
  Json arr = Json::array();
  bool ok = true;
  for (const auto& d : mods) {
    StepSet S = steps.empty() ? all_steps(d.n) : parse_steps(steps);
    require_steps(S, d.n);
    if (S.empty()) throw InputError("reconstruct needs a nonempty --S");
    TMap t(d);
    auto in = build_recovery_input(t, S);
    auto rec = recover_filtration(in);
    auto rep = roundtrip(t, S);
    Json e;
    e["S"] = in.S;
    Json steps_json = Json::array();
    for (std::size_t k = 0; k < in.S.size(); ++k) {
      Json st;
      st["i"] = in.S[k];
      st["recovered"] = subspace_json(rec[k]);
      st["expected"] = subspace_json(filtration_subspace(d, in.S[k]));
      steps_json.push_back(st);
      if (!json)
        std::cout << "Fil step " << in.S[k] << ": " << subspace_text(rec[k]) << "\n";
    }
    e["steps"] = steps_json;
    e["hom_identities"] = rep.identities_hold;
    e["pass"] = rep.ok();
    ok = ok && rep.ok();
    arr.push_back(e);
    if (!json) std::cout << (rep.ok() ? "PASS" : "FAIL") << "\n";
  }
  r["embeddings"] = arr;
  r["ok"] = ok;
  if (json) emit(r);
  return ok ? 0 : 1;
}

Permutation parse_window(const std::string& text) {
  std::vector<int> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      w.push_back(std::stoi(item, &used));
    } catch (const std::exception&) {
      throw InputError("malformed window: '" + text + "'");
    }
    if (used != item.size()) throw InputError("malformed window: '" + text + "'");
  }
  try {
    return Permutation(w);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

Word parse_word(const std::string& text) {
  Word word;
  if (text.empty()) return word;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '-')) {
    std::size_t used = 0;
    try {
      word.push_back(std::stoi(item, &used));
    } catch (const std::exception&) {
      throw InputError("malformed word: '" + text + "'");
    }
    if (used != item.size()) throw InputError("malformed word: '" + text + "'");
  }
  return word;
}

std::string word_text(const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "-" : "") + std::to_string(w[k]);
  return s.empty() ? "e" : s;
}

int cmd_weyl(const std::string& window, const std::string& word, int n, bool json) {
  Permutation w;
  if (!window.empty()) {
    w = parse_window(window);
  } else {
    if (n < 1) throw InputError("--word needs --n");
    Word letters = parse_word(word);
    for (int i : letters)
      if (i < 1 || i > n - 1) throw InputError("generator out of range in word");
    w = Permutation::from_word(n, letters);
  }
  const int size = w.size();
  if (size > 7) throw InputError("weyl supports n <= 7");
  Json r = report("weyl");
  r["window"] = permutation_json(w);
  r["length"] = length(w);
  auto words = reduced_words(w);
  Json wj = Json::array();
  for (const auto& x : words) wj.push_back(word_text(x));
  r["reduced_words"] = wj;
  r["support"] = support(w);
  Json gens = Json::array();
  for (int i = 1; i < size; ++i) {
    Json g;
    g["i"] = i;
    g["crossing_number"] = crossing_number(w, i);
    g["pair_count"] = pair_count(w, i);
    g["min_multiplicity"] = min_generator_multiplicity(w, i);
    int refl = reflections_dropping(w, i);
    g["reflections_dropping"] = refl;
    g["single_reflection"] = refl == 1;
    if (crossing_number(w, i) == 1) {
      auto m = multfree_decompose(w, i);
      Json mj;
      mj["prefix"] = permutation_json(m.prefix);
      mj["form"] = static_cast<int>(m.form);
      mj["delta_minus"] = m.delta_minus;
      mj["delta_plus"] = m.delta_plus;
      mj["word"] = word_text(m.word);
      g["multfree"] = mj;
    }
    gens.push_back(g);
  }
  r["generators"] = gens;
  if (json) {
    emit(r);
  } else {
    std::cout << "w = " << w.str() << ", length " << length(w) << ", " << words.size() << " reduced words\n";
    for (const auto& g : gens)
      std::cout << "  s_" << g["i"] << ": crossing " << g["crossing_number"] << ", pairs " << g["pair_count"]
                << ", min multiplicity " << g["min_multiplicity"] << ", reflections " << g["reflections_dropping"]
                << "\n";
  }
  return 0;
}

FlagMode parse_mode(const std::string& m) {
  if (m == "generic") return FlagMode::generic;
  if (m == "permutation") return FlagMode::permutation;
  if (m == "mixed") return FlagMode::mixed;
  throw InputError("unknown flag mode: " + m);
}

int cmd_random(int n, std::uint64_t seed, const std::string& mode, long p, int f) {
  if (n < 2 || n > 8) throw InputError("--n must be between 2 and 8");
  emit(module_to_json(random_module(n, p, f, seed, parse_mode(mode))));
  return 0;
}

int cmd_check(const std::vector<std::string>& files, int n, int trials, std::uint64_t seed, bool json) {
  struct Item {
    std::string label;
    FilteredPhiModule d;
  };
  std::vector<Item> items;
  std::vector<int> sizes;
  if (!files.empty()) {
    for (const auto& path : files)
      for (const auto& d : load(path)) {
        if (!validate(d).empty()) throw InputError("invalid instance in " + path);
        items.push_back({path, d});
        sizes.push_back(d.n);
      }
  } else {
    if (n < 2 || n > 5) throw InputError("--n must be between 2 and 5");
    const FlagMode modes[] = {FlagMode::generic, FlagMode::mixed, FlagMode::permutation};
    for (int k = 0; k < trials; ++k) {
      std::uint64_t s = seed + static_cast<std::uint64_t>(k);
      items.push_back({"seed " + std::to_string(s), random_module(n, 2, 1, s, modes[k % 3])});
    }
    sizes.push_back(n);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

  std::map<std::string, std::pair<int, int>> tally;  // name -> (passed, run)
  std::vector<std::string> failures, notes;
  auto record = [&](const std::string& label, const std::vector<CheckResult>& rs) {
    for (const auto& c : rs) {
      auto& t = tally[c.name];
      ++t.second;
      if (c.pass) {
        ++t.first;
        if (!c.detail.empty()) notes.push_back(label + ": " + c.name + ": " + c.detail);
      } else {
        failures.push_back(label + ": " + c.name + ": " + c.detail);
      }
    }
  };
  for (std::size_t k = 0; k < items.size(); ++k) {
    CheckOptions opt;
    opt.seed = seed + k;
    opt.all_tau = items[k].d.n <= 4;
    opt.refinements = items[k].d.n <= 4;
    record(items[k].label, check_module(items[k].d, opt));
  }
  for (int m : sizes) record("S_" + std::to_string(m), check_coxeter(m));
  if (!items.empty()) record("ext", check_ext_dims(items.front().d, 3, seed));

  bool ok = failures.empty();
  Json r = report("check");
  r["instances"] = items.size();
  Json checks = Json::object();
  for (const auto& [name, t] : tally) {
    Json c;
    c["passed"] = t.first;
    c["run"] = t.second;
    checks[name] = c;
  }
  r["checks"] = checks;
  r["failures"] = failures;
  r["notes"] = notes;
  r["ok"] = ok;
  if (json) {
    emit(r);
  } else {
    for (const auto& [name, t] : tally)
      std::cout << (t.first == t.second ? "PASS " : "FAIL ") << name << " " << t.first << "/" << t.second << "\n";
    for (const auto& f : failures) std::cout << "  " << f << "\n";
    if (!notes.empty()) std::cout << "notes:\n";
    for (const auto& m : notes) std::cout << "  " << m << "\n";
    std::cout << (ok ? "all checks passed" : "checks failed") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered module classification and filtration recovery"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");
  app.fallthrough();

  std::string file, steps, window, word, mode = "generic";
  std::vector<std::string> files;
  bool flat = false;
  int n = 0, trials = 20, f = 1;
  long p = 2;
  std::uint64_t seed = 0;

  auto* validate_cmd = app.add_subcommand("validate", "check an instance file");
  validate_cmd->add_option("file", file)->required();
  auto* classify_cmd = app.add_subcommand("classify", "split/cosplit/critical/very-critical table");
  classify_cmd->add_option("file", file)->required();
  auto* tmap_cmd = app.add_subcommand("tmap", "operators, kernel and image checks");
  tmap_cmd->add_option("file", file)->required();
  tmap_cmd->add_option("--S", steps, "comma-separated step indices");
  auto* skel_cmd = app.add_subcommand("skeleton", "constituent layers");
  skel_cmd->add_option("file", file)->required();
  skel_cmd->add_option("--S", steps, "comma-separated step indices");
  skel_cmd->add_flag("--flat", flat, "drop very-critical summands");
  auto* rec_cmd = app.add_subcommand("reconstruct", "recover filtration steps");
  rec_cmd->add_option("file", file)->required();
  rec_cmd->add_option("--S", steps, "comma-separated step indices");
  auto* weyl_cmd = app.add_subcommand("weyl", "Coxeter invariants of a permutation");
  weyl_cmd->add_option("window", window, "window notation, e.g. 2,1,0");
  weyl_cmd->add_option("--word", word, "dash-separated generators, e.g. 1-2-1");
  weyl_cmd->add_option("--n", n, "rank for --word");
  auto* random_cmd = app.add_subcommand("random", "print a random instance");
  random_cmd->add_option("--n", n)->required();
  random_cmd->add_option("--seed", seed);
  random_cmd->add_option("--mode", mode, "generic | permutation | mixed");
  random_cmd->add_option("--p", p);
  random_cmd->add_option("--f", f);
  auto* check_cmd = app.add_subcommand("check", "run the invariant suite");
  check_cmd->add_option("files", files);
  check_cmd->add_option("--n", n);
  check_cmd->add_option("--trials", trials);
  check_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, json);
    if (*classify_cmd) return cmd_classify(file, json);
    if (*tmap_cmd) return cmd_tmap(file, steps, json);
    if (*skel_cmd) return cmd_skeleton(file, steps, flat, json);
    if (*rec_cmd) return cmd_reconstruct(file, steps, json);
    if (*weyl_cmd) return cmd_weyl(window, word, n, json);
    if (*random_cmd) return cmd_random(n, seed, mode, p, f);
    if (*check_cmd) return cmd_check(files, n == 0 ? 3 : n, trials, seed, json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
