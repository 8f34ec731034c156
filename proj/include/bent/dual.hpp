#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "bent/group.hpp"

namespace bent {

/// Default absolute tolerance for complex equality at a given group order.
/// Matrix equality checks scale this by the matrix dimension.
inline double default_tau(int group_order) { return 1e-9 * std::max(1, group_order); }

/// One irreducible unitary representation: element index -> dim x dim
/// unitary matrix.
struct Representation {
  int group_order = 0;
  int dim = 0;
  std::vector<Eigen::MatrixXcd> matrices;  // matrices[x] = rho(x)
  int label = 0;                           // index within the owning DualTable
  bool is_trivial = false;

  const Eigen::MatrixXcd& at(int x) const { return matrices[x]; }
};

/// Character view of a one-dimensional representation.
struct Character {
  int group_order = 0;
  Eigen::VectorXcd values;  // values[x] = chi(x)
  int label = 0;
};

/// The dual of a group: a complete list of pairwise non-isomorphic
/// irreducible unitary representations in a fixed deterministic order
/// (ascending dimension, then catalogue index). entries[0] is always the
/// trivial representation. Immutable after construction.
struct DualTable {
  enum class Kind { AbelianCharacters, NonabelianIrreps, Imported };

  FiniteGroup group;
  std::vector<Representation> entries;
  Kind kind = Kind::Imported;

  int size() const { return static_cast<int>(entries.size()); }
  bool all_dim_one() const;

  /// chi^alpha(x); requires entry alpha to be one-dimensional.
  std::complex<double> chi(int alpha, int x) const;
  Character character(int alpha) const;
};

/// Character table of an Abelian group built from the supported
/// constructors. For products of cyclic groups the labeling follows the
/// fixed isomorphism alpha -> chi^alpha(x) = exp(2*pi*i * sum_k alpha_k
/// x_k / n_k) in the mixed-radix element encoding.
DualTable characters(const FiniteGroup& g);

/// Catalogued dual for supported structures: cyclic(n), dihedral(n),
/// quaternion8, symmetric(n <= 4), and products of supported factors
/// (tensor construction). Imported groups must load a dual file instead.
DualTable irreps(const FiniteGroup& g);

struct CheckResult {
  std::string check;
  bool pass = true;
  double residual = 0.0;
  std::string witness;  // empty when passing
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  const CheckResult* first_failure() const;
  std::string to_string() const;
};

/// Runs the full dual checklist: trivial entry placement, identity at e,
/// homomorphism, unitarity, irreducibility, pairwise orthogonality and
/// completeness. Failures are report entries, never exceptions.
VerificationReport verify_dual(const FiniteGroup& g, const DualTable& d, double tau = -1.0);

// Dual file format (line-oriented text, `#` comments):
//   dual <group_order> <num_entries>
//   rep <dim> <is_trivial:0|1>
//   <group_order blocks, each dim lines of 2*dim floats (re im, row-major)>
// load_dual verifies the table against g and rejects on any failure.
void save_dual(const DualTable& d, std::ostream& out);
void save_dual(const DualTable& d, const std::string& path);
DualTable load_dual(const FiniteGroup& g, std::istream& in, double tau = -1.0);
DualTable load_dual(const FiniteGroup& g, const std::string& path, double tau = -1.0);

}  // namespace bent
