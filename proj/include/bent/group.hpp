#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

#include "bent/errors.hpp"

namespace bent {

/// How a group was built. The irrep catalogue dispatches on this, so a
/// product keeps the structure of both factors.
struct Structure {
  enum class Kind { Cyclic, Product, Dihedral, Quaternion, Symmetric, Imported };

  Kind kind = Kind::Imported;
  int n = 0;                       // parameter of Cyclic / Dihedral / Symmetric
  std::vector<Structure> factors;  // the two factors of a Product

  static Structure cyclic(int n) { return {Kind::Cyclic, n, {}}; }
  static Structure dihedral(int n) { return {Kind::Dihedral, n, {}}; }
  static Structure quaternion() { return {Kind::Quaternion, 8, {}}; }
  static Structure symmetric(int n) { return {Kind::Symmetric, n, {}}; }
  static Structure imported() { return {Kind::Imported, 0, {}}; }
  static Structure product(Structure a, Structure b) {
    Structure s{Kind::Product, 0, {}};
    s.factors.push_back(std::move(a));
    s.factors.push_back(std::move(b));
    return s;
  }

  std::string to_string() const;
};

/// A finite group over element indices 0..order-1 with a validated Cayley
/// table. Index 0 is always the identity. Values are immutable after
/// construction and safe to share across threads.
struct FiniteGroup {
  int order = 0;
  Eigen::MatrixXi cayley;    // cayley(x, y) = index of x*y
  std::vector<int> inverse;  // inverse[x] = index of x^-1
  std::string name;
  Structure structure;

  int mul(int x, int y) const { return cayley(x, y); }
  int inv(int x) const { return inverse[x]; }
};

// Built-in constructors. Orders are capped at 120; everything downstream is
// sized for desk-scale exhaustive runs.
inline constexpr int kMaxBuiltinOrder = 120;

FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);
FiniteGroup dihedral_group(int n);  // n >= 3, order 2n
FiniteGroup quaternion_group();     // Q8
FiniteGroup symmetric_group(int n); // 1 <= n <= 5, composition (s*t)(i) = s(t(i))

/// Result of adopting an external Cayley table. When the identity was not at
/// index 0 the elements were relabeled; relabeling[old_index] = new_index.
struct ImportResult {
  FiniteGroup group;
  std::vector<int> relabeling;
  bool relabeled = false;
};

ImportResult from_cayley_table(const std::vector<std::vector<int>>& table,
                               std::string name = "imported");

/// Checks the four group axioms on the stored tables; throws
/// errc::not_a_group with a witness on the first violation.
void validate_group(const FiniteGroup& g);

bool is_abelian(const FiniteGroup& g);
int element_order(const FiniteGroup& g, int x);
std::vector<int> element_orders(const FiniteGroup& g);  // sorted multiset

bool same_group(const FiniteGroup& a, const FiniteGroup& b);

/// Builds a group from a spec string: `cyclic:4`, `dihedral:3`, `quaternion`,
/// `symmetric:3`, `product:cyclic:2,cyclic:2` (two or more factors), or
/// `file:<path>`.
FiniteGroup group_from_spec(const std::string& spec);

// Group file format (line-oriented text, `#` comments):
//   group <order> <name>
//   <order> rows of <order> whitespace-separated indices
//   inverse <i0> <i1> ...       (optional; validated against the table)
void save_group(const FiniteGroup& g, std::ostream& out);
void save_group(const FiniteGroup& g, const std::string& path);
FiniteGroup load_group(std::istream& in);
FiniteGroup load_group(const std::string& path);

}  // namespace bent
