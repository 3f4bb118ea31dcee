#pragma once

// Classical point symmetries of the hierarchy and their Lie algebra.

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "burgers/hierarchy.hpp"
#include "json.hpp"

namespace burgers::liealg {

using hierarchy::VectorField;

class NonClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time and space translation, scaling, Galilean boost and projective
/// generator of the m-component system, in the printed form for m = 1,
/// m = 2 and m >= 3.
std::vector<VectorField> generators(int m);

/// Lie bracket [A, B], componentwise A(B^i) - B(A^i). Both fields must act
/// on the same coordinates.
VectorField commutator(const VectorField& a, const VectorField& b);

/// Coordinates of `v` in the span of `basis`; throws NonClosureError when
/// v is not in the span.
std::vector<Rational> decompose(const VectorField& v, const std::vector<VectorField>& basis);

/// c[i][j][l]: [X_{i+1}, X_{j+1}] = sum_l c[i][j][l] X_{l+1}.
struct StructureConstants {
  static constexpr int kDim = 5;
  std::array<std::array<std::array<Rational, kDim>, kDim>, kDim> c{};

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

  bool antisymmetric() const;
  /// Largest-index-first list of nonzero Jacobi residual entries; empty
  /// when the identity holds exactly.
  std::vector<std::string> jacobi_violations() const;
  /// 5x5 text table, entry (i,j) = [X_i, X_j].
  std::string table() const;
  nlohmann::json to_json() const;
};

StructureConstants structure_constants(const std::vector<VectorField>& basis);
StructureConstants structure_constants(int m);

struct IsomorphismReport {
  int m1 = 0;
  int m2 = 0;
  bool identical = false;
  std::vector<std::string> differences;
};

/// Entrywise comparison of the tables in the printed bases.
IsomorphismReport isomorphism_check(int m1, int m2);

}  // namespace burgers::liealg
