// JSON encoding of instances and results. Rationals travel as strings.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "phiflag/exterior.hpp"
#include "phiflag/reconstruct.hpp"
#include "phiflag/skeleton.hpp"
#include "phiflag/t_map.hpp"

namespace phiflag {

using Json = nlohmann::ordered_json;

/// Malformed instance documents.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

FilteredPhiModule module_from_json(const Json& j);
/// Accepts one instance object or a nonempty array of them.
std::vector<FilteredPhiModule> modules_from_json(const Json& j);
Json module_to_json(const FilteredPhiModule& d);

Json rational_json(const Rational& q);
Json vector_json(const Vector& v);
Json matrix_json(const Matrix& m);
Json subspace_json(const Subspace& s);
Json wedge_json(const WedgeVector& w);
Json subset_json(const Subset& s);
Json permutation_json(const Permutation& w);

Json classification_json(const std::vector<SubsetClass>& classes);
Json skeleton_json(const PiSkeleton& s);

/// Parses "1,3" into {1,3}; empty text gives the empty set.
StepSet parse_steps(const std::string& text);

}  // namespace phiflag
