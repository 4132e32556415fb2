#include "phiflag/io.hpp"

#include <sstream>

namespace phiflag {

namespace {

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("expected a rational string");
}

}  // namespace

FilteredPhiModule module_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw ParseError("instance must be an object");
    FilteredPhiModule d;
    d.n = j.at("n").get<int>();
    d.p = j.at("p").get<long>();
    d.f = j.at("f").get<int>();
    for (const auto& e : j.at("eigenvalues")) d.eigenvalues.push_back(rational_from(e));
    for (const auto& w : j.at("weights")) d.weights.push_back(w.get<long>());
    for (const auto& row : j.at("flag")) {
      Vector v;
      for (const auto& x : row) v.push_back(rational_from(x));
      d.flag.push_back(v);
    }
    return d;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

std::vector<FilteredPhiModule> modules_from_json(const Json& j) {
  std::vector<FilteredPhiModule> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(module_from_json(item));
    if (out.empty()) throw ParseError("empty instance list");
  } else {
    out.push_back(module_from_json(j));
  }
  return out;
}

Json module_to_json(const FilteredPhiModule& d) {
  Json j;
  j["n"] = d.n;
  j["p"] = d.p;
  j["f"] = d.f;
  j["eigenvalues"] = vector_json(d.eigenvalues);
  j["weights"] = d.weights;
  Json flag = Json::array();
  for (const auto& v : d.flag) flag.push_back(vector_json(v));
  j["flag"] = flag;
  return j;
}

Json rational_json(const Rational& q) { return to_string(q); }

Json vector_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(rational_json(x));
  return j;
}

Json matrix_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(vector_json(m.row(r)));
  return j;
}

Json subspace_json(const Subspace& s) {
  Json j;
  j["ambient"] = s.ambient();
  j["dim"] = s.dim();
  j["basis"] = matrix_json(s.basis());
  return j;
}

Json wedge_json(const WedgeVector& w) {
  Json coords = Json::object();
  const auto& basis = wedge_basis(w.n, w.degree);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (w.coords[k] == 0) continue;
    std::string key;
    for (std::size_t a = 0; a < basis[k].size(); ++a) key += (a ? "," : "") + std::to_string(basis[k][a]);
    coords[key] = to_string(w.coords[k]);
  }
  Json j;
  j["degree"] = w.degree;
  j["coords"] = coords;
  return j;
}

Json subset_json(const Subset& s) { return Json(s); }

Json permutation_json(const Permutation& w) { return Json(w.window()); }

Json classification_json(const std::vector<SubsetClass>& classes) {
  Json arr = Json::array();
  for (const auto& c : classes) {
    Json j;
    j["I"] = subset_json(c.I);
    j["split"] = c.split;
    j["cosplit"] = c.cosplit;
    j["critical"] = c.critical;
    j["very_critical"] = c.very_critical;
    j["relative_position_times_w0"] = permutation_json(c.w);
    j["crossing_number"] = c.crossing;
    j["pair_count"] = c.pairs;
    arr.push_back(j);
  }
  return arr;
}

Json skeleton_json(const PiSkeleton& s) {
  auto labels = [](const std::vector<Constituent>& cs) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(c.label());
    return a;
  };
  Json j;
  j["n"] = s.n;
  j["S"] = s.S;
  j["flat"] = s.flat;
  j["socle"] = labels(s.socle);
  j["middle_nonsplit"] = labels(s.middle_nonsplit);
  j["top_alg_multiplicity"] = s.top_alg_multiplicity;
  Json vc = Json::array();
  for (const auto& I : s.very_critical_summands) vc.push_back(subset_json(I));
  j["very_critical_summands"] = vc;
  j["cosocle"] = labels(s.cosocle);
  j["cosocle_alg_multiplicity"] = s.top_alg_multiplicity;
  Json blocks = Json::array();
  for (const auto& b : s.kernel_blocks) {
    Json blk = Json::array();
    for (const auto& I : b) blk.push_back(subset_json(I));
    blocks.push_back(blk);
  }
  j["kernel_blocks"] = blocks;
  return j;
}

StepSet parse_steps(const std::string& text) {
  StepSet out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ParseError("empty entry in step list");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed step list: '" + text + "'");
    }
    if (used != item.size()) throw ParseError("malformed step list: '" + text + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace phiflag
