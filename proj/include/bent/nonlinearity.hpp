#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bent/fourier.hpp"

namespace bent {

/// f: G -> H as an array of H-indices, values[x] = f(x).
struct FunctionTable {
  FiniteGroup domain;
  FiniteGroup codomain;
  std::vector<int> values;
};

FunctionTable make_function(FiniteGroup domain, FiniteGroup codomain, std::vector<int> values);

// Function file format: `fn <|G|> <|H|>` then |G| H-indices; `#` comments.
void save_function(const FunctionTable& f, std::ostream& out);
void save_function(const FunctionTable& f, const std::string& path);
FunctionTable load_function(std::istream& in, const FiniteGroup& domain, const FiniteGroup& codomain);
FunctionTable load_function(const std::string& path, const FiniteGroup& domain, const FiniteGroup& codomain);

/// Fiber sizes: counts[y] = |{x : f(x) = y}|.
struct BalanceProfile {
  std::vector<long long> counts;
};

BalanceProfile balance_profile(const FunctionTable& f);
bool is_balanced(const FunctionTable& f);

/// Left derivative in direction alpha: x -> f(alpha*x) * f(x)^-1.
FunctionTable derivative(const FunctionTable& f, int alpha);

enum class Method { Oracle, BentAbAb, BentNabAb, BentAbNab, BentNabNab };
const char* method_name(Method m);

/// Location of the first criterion violation. g_label is alpha or the label
/// of rho in the G dual; h_label is beta or the label of rho' in the H dual.
struct Witness {
  int g_label = 0;
  int h_label = 0;
  double residual = 0.0;
  std::string detail;
};

struct PnVerdict {
  bool is_pn = false;
  Method method = Method::Oracle;
  std::optional<Witness> witness;   // Fourier criteria only, set iff !is_pn
  double max_residual = 0.0;        // max deviation seen over the full scan
  int first_unbalanced_alpha = -1;  // oracle only, -1 when PN
};

/// Integer-counting ground truth: f is PN iff every derivative d_alpha f,
/// alpha != e, is balanced.
PnVerdict pn_oracle(const FunctionTable& f);

// The four bentness characterizations. Each is an exact equivalent of
// pn_oracle on its precondition domain; duals must belong to f's groups.
PnVerdict bent_ab_ab(const FunctionTable& f, const DualTable& dG, const DualTable& dH, double tau = -1.0);
PnVerdict bent_nab_ab(const FunctionTable& f, const DualTable& dG, const DualTable& dH, double tau = -1.0);
PnVerdict bent_ab_nab(const FunctionTable& f, const DualTable& dG, const DualTable& dH, double tau = -1.0);
PnVerdict bent_nab_nab(const FunctionTable& f, const DualTable& dG, const DualTable& dH, double tau = -1.0);

/// Dispatches on is_abelian(G) x is_abelian(H).
PnVerdict bent_auto(const FunctionTable& f, const DualTable& dG, const DualTable& dH, double tau = -1.0);

/// AC_{f,beta}(alpha) = sum_x chi^beta(d_alpha f(x))   (H Abelian)
ScalarSignal ac_nab_ab(const FunctionTable& f, int beta, const DualTable& dH);

/// AC_{f,rho}(alpha) = sum_x rho(d_alpha f(x))
OperatorSignal ac_ab_nab(const FunctionTable& f, const Representation& rho);

/// Matrix coefficient rho'_ij as a scalar signal over H.
ScalarSignal matrix_coefficient(const Representation& rho, int i, int j);

/// AC_{f,rho',i,j}(alpha) = sum_x rho'_ij(d_alpha f(x))
ScalarSignal ac_nab_nab(const FunctionTable& f, const Representation& rho_prime, int i, int j);

/// Necessary conditions from the trace of the bentness identities. These are
/// one-directional: PN implies the condition, never the reverse.
struct NormConditionResult {
  bool holds = true;
  double max_residual = 0.0;
};

/// || (chi^beta o f)~(rho) ||^2 = |G| * dim(V) for all rho, beta in H*.
NormConditionResult norm_condition_nab_ab(const FunctionTable& f, const DualTable& dG,
                                          const DualTable& dH, double tau = -1.0);

/// || (rho o f)^MD(alpha) ||^2 = |G| * dim(W) for all alpha, nontrivial rho.
NormConditionResult norm_condition_ab_nab(const FunctionTable& f, const DualTable& dG,
                                          const DualTable& dH, double tau = -1.0);

}  // namespace bent
