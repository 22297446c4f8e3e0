#pragma once

#include <functional>

#include "folia/structures.hpp"

namespace folia {

struct ExpectedValue {
  double value = 0.0;
  std::string oracle;  // how the value was derived independently
};

/// A fully wired example geometry: backend, foliation, optional contact
/// data, ansatz candidate generators and documented expected values.
struct GalleryExample {
  std::string name;
  FoliatedManifold fm;
  std::optional<ContactData> contact;

  int default_cutoff = 2;
  bool subspace_filter = false;  // ansatz construction needs SVD extraction
  bool harmonic_expected = true;
  bool stretch = false;
  std::vector<std::string> notes;
  std::map<std::string, ExpectedValue> expected;

  // candidate pools; the hodge module filters/validates and builds spaces
  std::function<std::vector<FormField>(int degree, int cutoff)> form_candidates;
  std::function<std::vector<VectorField>(int cutoff)> field_candidates;

  std::vector<VectorField> aut_candidates;
  std::vector<int> aut_reeb_indices;

  std::vector<VectorField> foliate_pool;  // divergence-theorem test fields
  std::vector<VectorField> test_fields;   // pool for random residual suites
  std::vector<ScalarField> test_functions;
};

/// Stable list of example names (the optional 7-dimensional example last).
std::vector<std::string> gallery_names();

/// Constructs an example by name. Recognized parameters: "slope" (kronecker),
/// "cutoff". Unknown names raise std::invalid_argument.
GalleryExample construct(const std::string& name,
                         const std::map<std::string, double>& params = {});

}  // namespace folia
