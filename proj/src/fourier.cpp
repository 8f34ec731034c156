#include "bent/fourier.hpp"

namespace bent {

using Eigen::MatrixXcd;

namespace {

void require_character_dual(const FiniteGroup& g, const DualTable& d) {
  if (d.group.order != g.order)
    fail(errc::dimension_mismatch, "dual belongs to a group of different order");
  if (d.size() != g.order || !d.all_dim_one())
    fail(errc::wrong_kind, "operation needs the full character dual of an Abelian group");
}

void require_length(const FiniteGroup& g, Eigen::Index len) {
  if (len != g.order)
    fail(errc::dimension_mismatch, "signal length " + std::to_string(len) + " does not match group order " +
                                       std::to_string(g.order));
}

}  // namespace

MatrixXcd character_matrix(const DualTable& d) {
  if (!d.all_dim_one() || d.size() != d.group.order)
    fail(errc::wrong_kind, "character_matrix needs a complete all-dim-one dual");
  const int n = d.group.order;
  MatrixXcd x(n, n);
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < n; ++e) x(a, e) = d.entries[a].matrices[e](0, 0);
  return x;
}

ScalarSignal dft(const FiniteGroup& g, const DualTable& d, const ScalarSignal& phi) {
  require_character_dual(g, d);
  require_length(g, phi.size());
  return character_matrix(d) * phi;
}

ScalarSignal dft_inverse(const FiniteGroup& g, const DualTable& d, const ScalarSignal& phihat) {
  require_character_dual(g, d);
  require_length(g, phihat.size());
  return character_matrix(d).adjoint() * phihat / double(g.order);
}

double parseval_residual(const FiniteGroup& g, const DualTable& d, const ScalarSignal& phi) {
  const ScalarSignal phihat = dft(g, d, phi);
  return std::abs(phi.squaredNorm() - phihat.squaredNorm() / double(g.order));
}

VectorSignal mdft(const FiniteGroup& g, const DualTable& d, const VectorSignal& phi) {
  require_character_dual(g, d);
  require_length(g, phi.cols());
  return phi * character_matrix(d).transpose();
}

VectorSignal mdft_inverse(const FiniteGroup& g, const DualTable& d, const VectorSignal& phihat) {
  require_character_dual(g, d);
  require_length(g, phihat.cols());
  return phihat * character_matrix(d).conjugate() / double(g.order);
}

OperatorSignal mdft(const FiniteGroup& g, const DualTable& d, const OperatorSignal& phi) {
  require_character_dual(g, d);
  require_length(g, static_cast<Eigen::Index>(phi.size()));
  const MatrixXcd x = character_matrix(d);
  const int n = g.order;
  OperatorSignal out(n);
  for (int a = 0; a < n; ++a) {
    MatrixXcd acc = MatrixXcd::Zero(phi[0].rows(), phi[0].cols());
    for (int e = 0; e < n; ++e) acc.noalias() += x(a, e) * phi[e];
    out[a] = std::move(acc);
  }
  return out;
}

OperatorSignal mdft_inverse(const FiniteGroup& g, const DualTable& d, const OperatorSignal& phihat) {
  require_character_dual(g, d);
  require_length(g, static_cast<Eigen::Index>(phihat.size()));
  const MatrixXcd x = character_matrix(d);
  const int n = g.order;
  OperatorSignal out(n);
  for (int e = 0; e < n; ++e) {
    MatrixXcd acc = MatrixXcd::Zero(phihat[0].rows(), phihat[0].cols());
    for (int a = 0; a < n; ++a) acc.noalias() += std::conj(x(a, e)) * phihat[a];
    out[e] = acc / double(n);
  }
  return out;
}

MatrixXcd rep_ft(const FiniteGroup& g, const ScalarSignal& phi, const Representation& rho) {
  require_length(g, phi.size());
  if (rho.group_order != g.order)
    fail(errc::dimension_mismatch, "representation belongs to a group of different order");
  MatrixXcd acc = MatrixXcd::Zero(rho.dim, rho.dim);
  for (int x = 0; x < g.order; ++x) acc.noalias() += phi[x] * rho.matrices[x];
  return acc;
}

ScalarSignal rep_ft_inverse(const FiniteGroup& g, const DualTable& d,
                            const std::vector<MatrixXcd>& transforms) {
  if (d.group.order != g.order)
    fail(errc::dimension_mismatch, "dual belongs to a group of different order");
  if (transforms.size() != d.entries.size())
    fail(errc::dimension_mismatch, "need one transform per dual entry");
  long long dim_sq = 0;
  for (const auto& e : d.entries) dim_sq += static_cast<long long>(e.dim) * e.dim;
  if (dim_sq != g.order) fail(errc::incomplete_dual, "dual is not complete; inversion needs the full dual");
  for (size_t k = 0; k < transforms.size(); ++k)
    if (transforms[k].rows() != d.entries[k].dim || transforms[k].cols() != d.entries[k].dim)
      fail(errc::dimension_mismatch, "transform " + std::to_string(k) + " has the wrong dimension");

  const int n = g.order;
  ScalarSignal phi(n);
  for (int x = 0; x < n; ++x) {
    std::complex<double> acc = 0;
    const int xi = g.inverse[x];
    for (size_t k = 0; k < d.entries.size(); ++k) {
      const auto& e = d.entries[k];
      acc += double(e.dim) * (e.matrices[xi] * transforms[k]).trace();
    }
    phi[x] = acc / double(n);
  }
  return phi;
}

}  // namespace bent
