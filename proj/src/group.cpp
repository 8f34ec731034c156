#include "bent/group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "text_io.hpp"

namespace bent {

std::string Structure::to_string() const {
  switch (kind) {
    case Kind::Cyclic: return "cyclic(" + std::to_string(n) + ")";
    case Kind::Dihedral: return "dihedral(" + std::to_string(n) + ")";
    case Kind::Quaternion: return "quaternion8";
    case Kind::Symmetric: return "symmetric(" + std::to_string(n) + ")";
    case Kind::Product: return "product(" + factors[0].to_string() + "," + factors[1].to_string() + ")";
    case Kind::Imported: return "imported";
  }
  return "?";
}

namespace {

std::vector<int> inverses_from_table(const Eigen::MatrixXi& cayley) {
  const int n = static_cast<int>(cayley.rows());
  std::vector<int> inv(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (cayley(x, y) == 0) inv[x] = y;
  return inv;
}

void check_builtin_order(int order, const std::string& what) {
  if (order > kMaxBuiltinOrder)
    fail(errc::invalid_parameter,
         what + ": order " + std::to_string(order) + " exceeds the built-in cap of " +
             std::to_string(kMaxBuiltinOrder));
}

}  // namespace

FiniteGroup cyclic_group(int n) {
  if (n < 1) fail(errc::invalid_parameter, "cyclic_group: n must be >= 1");
  check_builtin_order(n, "cyclic_group");
  FiniteGroup g;
  g.order = n;
  g.cayley.resize(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) g.cayley(x, y) = (x + y) % n;
  g.inverse = inverses_from_table(g.cayley);
  g.name = "Z" + std::to_string(n);
  g.structure = Structure::cyclic(n);
  return g;
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  const int n1 = g1.order, n2 = g2.order, n = n1 * n2;
  check_builtin_order(n, "direct_product");
  FiniteGroup g;
  g.order = n;
  g.cayley.resize(n, n);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b)
      for (int c = 0; c < n1; ++c)
        for (int d = 0; d < n2; ++d)
          g.cayley(a * n2 + b, c * n2 + d) = g1.cayley(a, c) * n2 + g2.cayley(b, d);
  g.inverse.resize(n);
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) g.inverse[a * n2 + b] = g1.inverse[a] * n2 + g2.inverse[b];
  g.name = g1.name + "x" + g2.name;
  g.structure = Structure::product(g1.structure, g2.structure);
  return g;
}

FiniteGroup dihedral_group(int n) {
  if (n < 3) fail(errc::invalid_parameter, "dihedral_group: n must be >= 3");
  check_builtin_order(2 * n, "dihedral_group");
  // Indices 0..n-1 are r^k; n..2n-1 are s*r^k, with s r s = r^-1.
  FiniteGroup g;
  g.order = 2 * n;
  g.cayley.resize(2 * n, 2 * n);
  for (int x = 0; x < 2 * n; ++x) {
    for (int y = 0; y < 2 * n; ++y) {
      const int a = x % n, b = y % n;
      int z;
      if (x < n && y < n) z = (a + b) % n;                   // r^a r^b
      else if (x < n) z = n + ((b - a) % n + n) % n;         // r^a (s r^b) = s r^{b-a}
      else if (y < n) z = n + (a + b) % n;                   // (s r^a) r^b = s r^{a+b}
      else z = ((b - a) % n + n) % n;                        // (s r^a)(s r^b) = r^{b-a}
      g.cayley(x, y) = z;
    }
  }
  g.inverse = inverses_from_table(g.cayley);
  g.name = "D" + std::to_string(n);
  g.structure = Structure::dihedral(n);
  return g;
}

FiniteGroup quaternion_group() {
  // 0:1 1:-1 2:i 3:-i 4:j 5:-j 6:k 7:-k
  // unit(x) = x/2 in {1,i,j,k}; sign bit = x&1.
  static constexpr int unit_mul[4][4] = {
      // 1   i   j   k        (value = unit*2 + negative-bit)
      {0, 2, 4, 6},   // 1*
      {2, 1, 6, 5},   // i*: i*i=-1, i*j=k, i*k=-j
      {4, 7, 1, 2},   // j*: j*i=-k, j*j=-1, j*k=i
      {6, 4, 3, 1},   // k*: k*i=j, k*j=-i, k*k=-1
  };
  FiniteGroup g;
  g.order = 8;
  g.cayley.resize(8, 8);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const int m = unit_mul[x / 2][y / 2];
      const int sign = (x & 1) ^ (y & 1) ^ (m & 1);
      g.cayley(x, y) = (m & ~1) | sign;
    }
  }
  g.inverse = inverses_from_table(g.cayley);
  g.name = "Q8";
  g.structure = Structure::quaternion();
  return g;
}

FiniteGroup symmetric_group(int n) {
  if (n < 1 || n > 5) fail(errc::invalid_parameter, "symmetric_group: n must be in 1..5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));  // lexicographic, identity first

  const int order = static_cast<int>(perms.size());
  std::vector<std::vector<int>> sorted = perms;  // already sorted by construction
  auto index_of = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), q) - sorted.begin());
  };

  FiniteGroup g;
  g.order = order;
  g.cayley.resize(order, order);
  std::vector<int> comp(n);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      for (int k = 0; k < n; ++k) comp[k] = perms[i][perms[j][k]];  // (s*t)(k) = s(t(k))
      g.cayley(i, j) = index_of(comp);
    }
  }
  g.inverse = inverses_from_table(g.cayley);
  g.name = "S" + std::to_string(n);
  g.structure = Structure::symmetric(n);
  return g;
}

void validate_group(const FiniteGroup& g) {
  const int n = g.order;
  if (n < 1) fail(errc::not_a_group, "empty group");
  if (g.cayley.rows() != n || g.cayley.cols() != n)
    fail(errc::not_a_group, "Cayley table is not order x order");
  if (static_cast<int>(g.inverse.size()) != n) fail(errc::not_a_group, "inverse array has wrong length");

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (g.cayley(x, y) < 0 || g.cayley(x, y) >= n)
        fail(errc::not_a_group, "entry (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");

  for (int x = 0; x < n; ++x)
    if (g.cayley(0, x) != x || g.cayley(x, 0) != x)
      fail(errc::not_a_group, "element 0 is not the identity (witness x=" + std::to_string(x) + ")");

  std::vector<char> seen(n);
  for (int x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < n; ++y) seen[g.cayley(x, y)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      fail(errc::not_a_group, "row " + std::to_string(x) + " is not a permutation");
  }
  for (int y = 0; y < n; ++y) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < n; ++x) seen[g.cayley(x, y)] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      fail(errc::not_a_group, "column " + std::to_string(y) + " is not a permutation");
  }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (g.cayley(g.cayley(x, y), z) != g.cayley(x, g.cayley(y, z)))
          fail(errc::not_a_group, "associativity fails at (x,y,z) = (" + std::to_string(x) + "," +
                                      std::to_string(y) + "," + std::to_string(z) + ")");

  for (int x = 0; x < n; ++x)
    if (g.inverse[x] < 0 || g.inverse[x] >= n || g.cayley(x, g.inverse[x]) != 0)
      fail(errc::not_a_group, "inverse[" + std::to_string(x) + "] is inconsistent with the table");
}

ImportResult from_cayley_table(const std::vector<std::vector<int>>& table, std::string name) {
  const int n = static_cast<int>(table.size());
  if (n < 1) fail(errc::invalid_parameter, "from_cayley_table: empty table");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n) fail(errc::invalid_parameter, "from_cayley_table: table is not square");

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table[x][y] < 0 || table[x][y] >= n)
        fail(errc::not_a_group, "entry (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");

  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) fail(errc::not_a_group, "no identity element");

  ImportResult result;
  result.relabeling.resize(n);
  std::iota(result.relabeling.begin(), result.relabeling.end(), 0);
  if (identity != 0) {
    // Swap labels 0 <-> identity so the invariant "identity at index 0" holds.
    std::swap(result.relabeling[0], result.relabeling[identity]);
    result.relabeled = true;
  }
  const auto& pi = result.relabeling;

  FiniteGroup g;
  g.order = n;
  g.cayley.resize(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) g.cayley(pi[x], pi[y]) = pi[table[x][y]];
  g.inverse = inverses_from_table(g.cayley);
  g.name = std::move(name);
  g.structure = Structure::imported();
  validate_group(g);
  result.group = std::move(g);
  return result;
}

bool is_abelian(const FiniteGroup& g) {
  for (int x = 0; x < g.order; ++x)
    for (int y = x + 1; y < g.order; ++y)
      if (g.cayley(x, y) != g.cayley(y, x)) return false;
  return true;
}

int element_order(const FiniteGroup& g, int x) {
  int k = 1, c = x;
  while (c != 0) {
    c = g.cayley(c, x);
    ++k;
  }
  return k;
}

std::vector<int> element_orders(const FiniteGroup& g) {
  std::vector<int> orders(g.order);
  for (int x = 0; x < g.order; ++x) orders[x] = element_order(g, x);
  std::sort(orders.begin(), orders.end());
  return orders;
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  return a.order == b.order && a.cayley == b.cayley;
}

namespace {

FiniteGroup group_from_basic_spec(const std::string& spec) {
  if (spec == "quaternion") return quaternion_group();
  auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto parse_n = [&]() {
    try {
      size_t pos = 0;
      int n = std::stoi(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument("");
      return n;
    } catch (const std::exception&) {
      fail(errc::invalid_parameter, "group spec '" + spec + "': bad integer parameter");
    }
  };
  if (head == "cyclic") return cyclic_group(parse_n());
  if (head == "dihedral") return dihedral_group(parse_n());
  if (head == "symmetric") return symmetric_group(parse_n());
  if (head == "file") return load_group(arg);
  fail(errc::invalid_parameter, "unknown group spec '" + spec + "'");
}

}  // namespace

FiniteGroup group_from_spec(const std::string& spec) {
  if (spec.rfind("product:", 0) == 0) {
    const std::string rest = spec.substr(8);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : rest) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (parts.size() < 2) fail(errc::invalid_parameter, "product spec needs at least two factors");
    FiniteGroup g = group_from_basic_spec(parts[0]);
    for (size_t i = 1; i < parts.size(); ++i) g = direct_product(g, group_from_basic_spec(parts[i]));
    return g;
  }
  return group_from_basic_spec(spec);
}

void save_group(const FiniteGroup& g, std::ostream& out) {
  out << "group " << g.order << " " << g.name << "\n";
  for (int x = 0; x < g.order; ++x) {
    for (int y = 0; y < g.order; ++y) out << (y ? " " : "") << g.cayley(x, y);
    out << "\n";
  }
  out << "inverse";
  for (int x = 0; x < g.order; ++x) out << " " << g.inverse[x];
  out << "\n";
}

void save_group(const FiniteGroup& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::parse_error, "cannot open '" + path + "' for writing");
  save_group(g, out);
}

FiniteGroup load_group(std::istream& in) {
  detail::LineReader reader(in, "group file");
  std::istringstream header(reader.require("`group <order> <name>` header"));
  std::string kw, name;
  int order = 0;
  header >> kw >> order >> name;
  if (kw != "group" || order < 1) reader.error("expected `group <order> <name>`");
  if (name.empty()) name = "imported";

  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x) {
    std::istringstream row(reader.require("Cayley table row"));
    for (int y = 0; y < order; ++y)
      if (!(row >> table[x][y])) reader.error("short Cayley table row");
    int extra;
    if (row >> extra) reader.error("Cayley table row has too many entries");
  }

  std::vector<int> stated_inverse;
  std::string line;
  if (reader.next(line)) {
    std::istringstream inv(line);
    std::string kw2;
    inv >> kw2;
    if (kw2 != "inverse") reader.error("expected optional `inverse ...` line");
    int v;
    while (inv >> v) stated_inverse.push_back(v);
    if (static_cast<int>(stated_inverse.size()) != order) reader.error("inverse line has wrong length");
  }

  ImportResult imported = from_cayley_table(table, name);
  if (!stated_inverse.empty()) {
    const auto& pi = imported.relabeling;
    for (int x = 0; x < order; ++x) {
      if (stated_inverse[x] < 0 || stated_inverse[x] >= order ||
          imported.group.inverse[pi[x]] != pi[stated_inverse[x]])
        fail(errc::not_a_group, "stated inverse of element " + std::to_string(x) + " contradicts the table");
    }
  }
  return std::move(imported.group);
}

FiniteGroup load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open group file '" + path + "'");
  return load_group(in);
}

}  // namespace bent
