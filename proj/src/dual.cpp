#include "bent/dual.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "text_io.hpp"

namespace bent {

using cxd = std::complex<double>;
using Eigen::MatrixXcd;

bool DualTable::all_dim_one() const {
  for (const auto& e : entries)
    if (e.dim != 1) return false;
  return true;
}

cxd DualTable::chi(int alpha, int x) const {
  const auto& e = entries.at(alpha);
  if (e.dim != 1) fail(errc::wrong_kind, "dual entry " + std::to_string(alpha) + " is not one-dimensional");
  return e.matrices[x](0, 0);
}

Character DualTable::character(int alpha) const {
  const auto& e = entries.at(alpha);
  if (e.dim != 1) fail(errc::wrong_kind, "dual entry " + std::to_string(alpha) + " is not one-dimensional");
  Character c;
  c.group_order = e.group_order;
  c.label = e.label;
  c.values.resize(e.group_order);
  for (int x = 0; x < e.group_order; ++x) c.values[x] = e.matrices[x](0, 0);
  return c;
}

namespace {

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Representation make_rep(int order, std::vector<MatrixXcd> mats, bool trivial) {
  Representation r;
  r.group_order = order;
  r.dim = static_cast<int>(mats.front().rows());
  r.matrices = std::move(mats);
  r.is_trivial = trivial;
  return r;
}

Representation scalar_rep(int order, const std::vector<cxd>& values, bool trivial) {
  std::vector<MatrixXcd> mats(order);
  for (int x = 0; x < order; ++x) {
    mats[x].resize(1, 1);
    mats[x](0, 0) = values[x];
  }
  return make_rep(order, std::move(mats), trivial);
}

std::vector<Representation> cyclic_entries(int n) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<Representation> out;
  out.reserve(n);
  for (int a = 0; a < n; ++a) {
    std::vector<cxd> vals(n);
    for (int x = 0; x < n; ++x) vals[x] = std::polar(1.0, two_pi * a * x / n);
    out.push_back(scalar_rep(n, vals, a == 0));
  }
  return out;
}

std::vector<Representation> dihedral_entries(int n) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const int order = 2 * n;
  std::vector<Representation> out;

  auto ones = std::vector<cxd>(order, 1.0);
  out.push_back(scalar_rep(order, ones, true));

  std::vector<cxd> sign(order);
  for (int x = 0; x < order; ++x) sign[x] = x < n ? 1.0 : -1.0;  // reflections -> -1
  out.push_back(scalar_rep(order, sign, false));

  if (n % 2 == 0) {
    std::vector<cxd> chi_r(order), chi_rs(order);
    for (int x = 0; x < order; ++x) {
      const double r = (x % n) % 2 == 0 ? 1.0 : -1.0;  // r -> -1
      chi_r[x] = r;
      chi_rs[x] = x < n ? r : -r;
    }
    out.push_back(scalar_rep(order, chi_r, false));
    out.push_back(scalar_rep(order, chi_rs, false));
  }

  // Two-dimensional series: rho_h(r) = diag(w^h, w^-h), rho_h(s) = [[0,1],[1,0]].
  const int h_max = (n - 1) / 2;  // = ceil(n/2) - 1
  for (int h = 1; h <= h_max; ++h) {
    std::vector<MatrixXcd> mats(order);
    for (int x = 0; x < order; ++x) {
      const int k = x % n;
      const cxd w = std::polar(1.0, two_pi * h * k / n);
      MatrixXcd m(2, 2);
      if (x < n)
        m << w, 0.0, 0.0, std::conj(w);
      else
        m << 0.0, std::conj(w), w, 0.0;
      mats[x] = m;
    }
    out.push_back(make_rep(order, std::move(mats), false));
  }
  return out;
}

std::vector<Representation> quaternion_entries() {
  std::vector<Representation> out;
  // The four characters factor through Q8/{+-1}; classes 1:{0,1} i:{2,3} j:{4,5} k:{6,7}.
  for (auto [si, sj] : {std::pair{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
    const int sk = si * sj;
    const double cls[4] = {1.0, double(si), double(sj), double(sk)};
    std::vector<cxd> vals(8);
    for (int x = 0; x < 8; ++x) vals[x] = cls[x / 2];
    out.push_back(scalar_rep(8, vals, si == 1 && sj == 1));
  }
  // Pauli-style two-dimensional representation.
  const cxd I(0.0, 1.0);
  MatrixXcd id2 = MatrixXcd::Identity(2, 2), ri(2, 2), rj(2, 2);
  ri << I, 0.0, 0.0, -I;
  rj << 0.0, 1.0, -1.0, 0.0;
  MatrixXcd rk = ri * rj;
  std::vector<MatrixXcd> mats = {id2, -id2, ri, -ri, rj, -rj, rk, -rk};
  out.push_back(make_rep(8, std::move(mats), false));
  return out;
}

std::vector<std::vector<int>> permutations_lex(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

int permutation_parity(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  int parity = 1;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) parity = -parity;
  }
  return parity;
}

// The standard (n-1)-dimensional representation of S_n: permutation matrices
// restricted to the sum-zero subspace, expressed in the orthonormal basis
// u_k = (e_0 + ... + e_{k-1} - k e_k) / sqrt(k(k+1)).
std::vector<MatrixXcd> symmetric_standard(int n) {
  const auto perms = permutations_lex(n);
  Eigen::MatrixXd basis(n, n - 1);
  for (int k = 1; k < n; ++k) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    u.head(k).setOnes();
    u(k) = -k;
    basis.col(k - 1) = u / u.norm();
  }
  std::vector<MatrixXcd> mats(perms.size());
  for (size_t s = 0; s < perms.size(); ++s) {
    Eigen::MatrixXd permuted(n, n - 1);  // rows permuted by sigma: P_sigma * basis
    for (int i = 0; i < n; ++i) permuted.row(perms[s][i]) = basis.row(i);
    mats[s] = (basis.transpose() * permuted).cast<cxd>();
  }
  return mats;
}

// S4 -> S3 through the action on the three pair-partitions of {0,1,2,3},
// composed with the standard two-dimensional representation of S3. A
// partition is indexed by the partner of element 0 minus one:
// {0,1|2,3} -> 0, {0,2|1,3} -> 1, {0,3|1,2} -> 2.
std::vector<MatrixXcd> s4_two_dimensional() {
  const auto perms4 = permutations_lex(4);
  const auto perms3 = permutations_lex(3);
  const auto s3_std = symmetric_standard(3);
  std::vector<MatrixXcd> mats(perms4.size());
  for (size_t s = 0; s < perms4.size(); ++s) {
    const auto& p = perms4[s];
    std::vector<int> image(3);
    for (int partner = 1; partner <= 3; ++partner) {
      // Partition `partner-1` maps to the partition of the pair {a, b}.
      // The new partner of 0: the other pair element if 0 is in {a, b},
      // otherwise the non-zero element of the complement (indices sum to 6).
      const int a = p[0], b = p[partner];
      const int q = a == 0 ? b : (b == 0 ? a : 6 - a - b);
      image[partner - 1] = q - 1;
    }
    const int idx3 = static_cast<int>(std::lower_bound(perms3.begin(), perms3.end(), image) - perms3.begin());
    mats[s] = s3_std[idx3];
  }
  return mats;
}

std::vector<Representation> symmetric_entries(int n) {
  const auto perms = permutations_lex(n);
  const int order = static_cast<int>(perms.size());
  std::vector<Representation> out;

  if (n == 1) {
    out.push_back(scalar_rep(1, {cxd(1.0)}, true));
    return out;
  }

  out.push_back(scalar_rep(order, std::vector<cxd>(order, 1.0), true));

  std::vector<cxd> sgn(order);
  for (int s = 0; s < order; ++s) sgn[s] = double(permutation_parity(perms[s]));
  out.push_back(scalar_rep(order, sgn, false));

  if (n == 2) return out;

  if (n == 4) out.push_back(make_rep(order, s4_two_dimensional(), false));

  auto std_mats = symmetric_standard(n);
  if (n == 4) {
    auto std_sgn = std_mats;
    for (int s = 0; s < order; ++s) std_sgn[s] *= sgn[s];
    out.push_back(make_rep(order, std::move(std_mats), false));  // standard before standard (x) sign
    out.push_back(make_rep(order, std::move(std_sgn), false));
  } else {
    out.push_back(make_rep(order, std::move(std_mats), false));  // n == 3
  }
  return out;
}

std::vector<Representation> catalogue_entries(const FiniteGroup& g);

FiniteGroup realize(const Structure& s) {
  switch (s.kind) {
    case Structure::Kind::Cyclic: return cyclic_group(s.n);
    case Structure::Kind::Dihedral: return dihedral_group(s.n);
    case Structure::Kind::Quaternion: return quaternion_group();
    case Structure::Kind::Symmetric: return symmetric_group(s.n);
    case Structure::Kind::Product: return direct_product(realize(s.factors[0]), realize(s.factors[1]));
    case Structure::Kind::Imported: break;
  }
  fail(errc::unsupported_structure, "cannot realize an imported structure");
}

std::vector<Representation> product_entries(const FiniteGroup& g) {
  const FiniteGroup g1 = realize(g.structure.factors[0]);
  const FiniteGroup g2 = realize(g.structure.factors[1]);
  const auto e1 = catalogue_entries(g1);
  const auto e2 = catalogue_entries(g2);
  std::vector<Representation> out;
  out.reserve(e1.size() * e2.size());
  for (const auto& a : e1) {
    for (const auto& b : e2) {
      std::vector<MatrixXcd> mats(g.order);
      for (int x = 0; x < g1.order; ++x)
        for (int y = 0; y < g2.order; ++y) mats[x * g2.order + y] = kron(a.matrices[x], b.matrices[y]);
      out.push_back(make_rep(g.order, std::move(mats), a.is_trivial && b.is_trivial));
    }
  }
  return out;
}

std::vector<Representation> catalogue_entries(const FiniteGroup& g) {
  switch (g.structure.kind) {
    case Structure::Kind::Cyclic: return cyclic_entries(g.structure.n);
    case Structure::Kind::Dihedral: return dihedral_entries(g.structure.n);
    case Structure::Kind::Quaternion: return quaternion_entries();
    case Structure::Kind::Symmetric:
      if (g.structure.n > 4)
        fail(errc::unsupported_structure,
             "no catalogued dual for " + g.structure.to_string() + "; supply a dual table file");
      return symmetric_entries(g.structure.n);
    case Structure::Kind::Product: return product_entries(g);
    case Structure::Kind::Imported: break;
  }
  fail(errc::unsupported_structure, "no catalogued dual for an imported group; supply a dual table file");
}

}  // namespace

DualTable irreps(const FiniteGroup& g) {
  auto entries = catalogue_entries(g);
  // Deterministic order: ascending dimension, catalogue index breaking ties.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Representation& a, const Representation& b) { return a.dim < b.dim; });
  for (size_t k = 0; k < entries.size(); ++k) entries[k].label = static_cast<int>(k);

  DualTable d;
  d.group = g;
  d.entries = std::move(entries);
  d.kind = is_abelian(g) ? DualTable::Kind::AbelianCharacters : DualTable::Kind::NonabelianIrreps;
  return d;
}

DualTable characters(const FiniteGroup& g) {
  if (g.structure.kind == Structure::Kind::Imported)
    fail(errc::unsupported_structure, "imported group has no catalogued characters; supply a dual table file");
  if (!is_abelian(g)) fail(errc::wrong_kind, "characters: group " + g.name + " is not Abelian");
  return irreps(g);
}

bool VerificationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* VerificationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

std::string VerificationReport::to_string() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << c.check << " " << (c.pass ? "pass" : "FAIL");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", c.residual);
    out << " residual " << buf;
    if (!c.witness.empty()) out << " (" << c.witness << ")";
    out << "\n";
  }
  return out.str();
}

VerificationReport verify_dual(const FiniteGroup& g, const DualTable& d, double tau) {
  if (tau < 0) tau = default_tau(g.order);
  const int n = g.order;
  VerificationReport report;

  auto add = [&report](std::string check, bool pass, double residual, std::string witness) {
    report.checks.push_back({std::move(check), pass, residual, pass ? "" : std::move(witness)});
  };

  if (d.group.order != n || d.group.cayley != g.cayley) {
    add("group_match", false, 0.0, "dual was built for a different group");
    return report;
  }

  // structural: exactly one trivial entry and it comes first
  {
    int trivial_count = 0;
    for (const auto& e : d.entries) trivial_count += e.is_trivial ? 1 : 0;
    bool ok = trivial_count == 1 && !d.entries.empty() && d.entries[0].is_trivial && d.entries[0].dim == 1;
    double res = 0.0;
    if (ok)
      for (int x = 0; x < n; ++x) res = std::max(res, std::abs(d.entries[0].matrices[x](0, 0) - cxd(1.0)));
    ok = ok && res <= tau;
    add("trivial_entry", ok, res,
        trivial_count != 1 ? "expected exactly one trivial entry, found " + std::to_string(trivial_count)
                           : "trivial entry malformed or not first");
  }

  // completeness: sum of dim^2 equals |G|
  {
    long long sum = 0;
    for (const auto& e : d.entries) sum += static_cast<long long>(e.dim) * e.dim;
    add("completeness", sum == n, std::abs(double(sum - n)),
        "sum of dim^2 is " + std::to_string(sum) + ", expected " + std::to_string(n));
  }

  // per-entry checks
  double id_res = 0, hom_res = 0, uni_res = 0, irr_res = 0;
  std::string id_wit, hom_wit, uni_wit, irr_wit;
  bool shape_ok = true;
  for (const auto& e : d.entries) {
    if (e.group_order != n || static_cast<int>(e.matrices.size()) != n) {
      shape_ok = false;
      break;
    }
    for (const auto& m : e.matrices)
      if (m.rows() != e.dim || m.cols() != e.dim) shape_ok = false;
    if (!shape_ok) break;

    const MatrixXcd id = MatrixXcd::Identity(e.dim, e.dim);
    double r = (e.matrices[0] - id).norm();
    if (r > id_res) {
      id_res = r;
      id_wit = "entry " + std::to_string(e.label);
    }
    for (int x = 0; x < n; ++x) {
      r = (e.matrices[x] * e.matrices[x].adjoint() - id).norm();
      if (r > uni_res) {
        uni_res = r;
        uni_wit = "entry " + std::to_string(e.label) + " x=" + std::to_string(x);
      }
      for (int y = 0; y < n; ++y) {
        r = (e.matrices[g.cayley(x, y)] - e.matrices[x] * e.matrices[y]).norm();
        if (r > hom_res) {
          hom_res = r;
          hom_wit = "entry " + std::to_string(e.label) + " x=" + std::to_string(x) + " y=" + std::to_string(y);
        }
      }
    }
    double chi_norm = 0;
    for (int x = 0; x < n; ++x) chi_norm += std::norm(e.matrices[x].trace());
    r = std::abs(chi_norm / n - 1.0);
    if (r > irr_res) {
      irr_res = r;
      irr_wit = "entry " + std::to_string(e.label);
    }
  }
  if (!shape_ok) {
    add("shapes", false, 0.0, "entry matrix count or dimensions inconsistent");
    return report;
  }
  const int max_dim = std::max_element(d.entries.begin(), d.entries.end(), [](auto& a, auto& b) {
                        return a.dim < b.dim;
                      })->dim;
  add("identity_at_e", id_res <= tau * max_dim, id_res, id_wit);
  add("homomorphism", hom_res <= tau * max_dim, hom_res, hom_wit);
  add("unitarity", uni_res <= tau * max_dim, uni_res, uni_wit);
  add("irreducibility", irr_res <= tau, irr_res, irr_wit);

  // pairwise non-isomorphism via character orthogonality
  {
    double res = 0;
    std::string wit;
    for (size_t p = 0; p < d.entries.size(); ++p) {
      for (size_t q = p + 1; q < d.entries.size(); ++q) {
        cxd acc = 0;
        for (int x = 0; x < n; ++x)
          acc += d.entries[p].matrices[x].trace() * std::conj(d.entries[q].matrices[x].trace());
        const double r = std::abs(acc) / n;
        if (r > res) {
          res = r;
          wit = "entries " + std::to_string(p) + "," + std::to_string(q);
        }
      }
    }
    add("pairwise_orthogonality", res <= tau, res, wit);
  }

  return report;
}

namespace {

void write_double(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void save_dual(const DualTable& d, std::ostream& out) {
  out << "dual " << d.group.order << " " << d.entries.size() << "\n";
  for (const auto& e : d.entries) {
    out << "rep " << e.dim << " " << (e.is_trivial ? 1 : 0) << "\n";
    for (int x = 0; x < d.group.order; ++x) {
      for (int i = 0; i < e.dim; ++i) {
        for (int j = 0; j < e.dim; ++j) {
          if (j) out << " ";
          write_double(out, e.matrices[x](i, j).real());
          out << " ";
          write_double(out, e.matrices[x](i, j).imag());
        }
        out << "\n";
      }
    }
  }
}

void save_dual(const DualTable& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::parse_error, "cannot open '" + path + "' for writing");
  save_dual(d, out);
}

DualTable load_dual(const FiniteGroup& g, std::istream& in, double tau) {
  detail::LineReader reader(in, "dual file");
  std::istringstream header(reader.require("`dual <group_order> <num_entries>` header"));
  std::string kw;
  int order = 0, num_entries = 0;
  header >> kw >> order >> num_entries;
  if (kw != "dual" || order < 1 || num_entries < 1) reader.error("expected `dual <group_order> <num_entries>`");
  if (order != g.order)
    fail(errc::verification_failed, "dual file is for a group of order " + std::to_string(order) +
                                        ", expected " + std::to_string(g.order));

  DualTable d;
  d.group = g;
  d.kind = DualTable::Kind::Imported;
  for (int k = 0; k < num_entries; ++k) {
    std::istringstream rep_header(reader.require("`rep <dim> <is_trivial>` header"));
    int dim = 0, trivial = 0;
    rep_header >> kw >> dim >> trivial;
    if (kw != "rep" || dim < 1 || trivial < 0 || trivial > 1) reader.error("expected `rep <dim> <is_trivial:0|1>`");

    Representation r;
    r.group_order = order;
    r.dim = dim;
    r.label = k;
    r.is_trivial = trivial == 1;
    r.matrices.resize(order);
    for (int x = 0; x < order; ++x) {
      MatrixXcd m(dim, dim);
      for (int i = 0; i < dim; ++i) {
        std::istringstream row(reader.require("matrix row"));
        for (int j = 0; j < dim; ++j) {
          double re, im;
          if (!(row >> re >> im)) reader.error("matrix row needs " + std::to_string(2 * dim) + " floats");
          m(i, j) = cxd(re, im);
        }
      }
      r.matrices[x] = std::move(m);
    }
    d.entries.push_back(std::move(r));
  }

  VerificationReport report = verify_dual(g, d, tau);
  if (!report.all_pass()) {
    const CheckResult* f = report.first_failure();
    fail(errc::verification_failed,
         "dual file rejected, check '" + f->check + "' failed (" + f->witness + ")\n" + report.to_string());
  }
  return d;
}

DualTable load_dual(const FiniteGroup& g, const std::string& path, double tau) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open dual file '" + path + "'");
  return load_dual(g, in, tau);
}

}  // namespace bent
