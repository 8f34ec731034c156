#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bent/dual.hpp"

namespace bent {

/// phi: G -> C as a length-|G| vector.
using ScalarSignal = Eigen::VectorXcd;

/// phi: G -> V with one column per group element (dim x |G|).
using VectorSignal = Eigen::MatrixXcd;

/// F: G -> End(W), one matrix per group element.
using OperatorSignal = std::vector<Eigen::MatrixXcd>;

/// X(alpha, x) = chi^alpha(x). Requires a complete all-dim-one dual.
Eigen::MatrixXcd character_matrix(const DualTable& d);

// Discrete Fourier transform over an Abelian group:
//   dft(phi)[alpha] = sum_x phi[x] * chi^alpha(x)
//   dft_inverse(psi)[x] = (1/|G|) * sum_alpha psi[alpha] * conj(chi^alpha(x))
ScalarSignal dft(const FiniteGroup& g, const DualTable& d, const ScalarSignal& phi);
ScalarSignal dft_inverse(const FiniteGroup& g, const DualTable& d, const ScalarSignal& phihat);

/// | sum_x |phi(x)|^2 - (1/|G|) sum_alpha |phihat(alpha)|^2 |
double parseval_residual(const FiniteGroup& g, const DualTable& d, const ScalarSignal& phi);

// Multidimensional transform: the componentwise DFT of a V-valued signal,
// in the standard coordinate basis.
VectorSignal mdft(const FiniteGroup& g, const DualTable& d, const VectorSignal& phi);
VectorSignal mdft_inverse(const FiniteGroup& g, const DualTable& d, const VectorSignal& phihat);

// Same transform with End(W) as the coefficient space.
OperatorSignal mdft(const FiniteGroup& g, const DualTable& d, const OperatorSignal& phi);
OperatorSignal mdft_inverse(const FiniteGroup& g, const DualTable& d, const OperatorSignal& phihat);

/// Representation-based Fourier transform: sum_x phi[x] * rho(x).
Eigen::MatrixXcd rep_ft(const FiniteGroup& g, const ScalarSignal& phi, const Representation& rho);

/// Inversion across a complete dual:
///   phi(x) = (1/|G|) * sum_V dim(V) * tr(rho_V(x^-1) * transforms[V])
ScalarSignal rep_ft_inverse(const FiniteGroup& g, const DualTable& d,
                            const std::vector<Eigen::MatrixXcd>& transforms);

}  // namespace bent
