#include "nlqed/fredholm_oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>

namespace nlqed {

CouplingTensor solve_fredholm_dense(const Geometry1D& geom, const GreenField& g2, const GreenField& g3,
                                    const GreenField& g23, double eps_min) {
  const SpatialGrid1D& grid = g2.grid;
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (g3.size() != grid.size() || g23.size() != grid.size()) {
    throw Error(ErrorKind::InvalidArgument, "Green fields live on different grids");
  }
  CouplingTensor alpha;
  alpha.omega2 = g2.omega;
  alpha.omega3 = g3.omega;
  alpha.omega23 = g2.omega + g3.omega;
  alpha.grid = grid;
  alpha.eps23 = geom.node_permittivity(grid, alpha.omega23);
  const auto chi = geom.node_chi2(grid, g2.omega, g3.omega);

  for (std::size_t i = 0; i < alpha.eps23.size(); ++i) {
    if (!(alpha.eps23[i].imag() >= eps_min)) {
      throw Error(ErrorKind::VanishingAbsorption, "kernel is singular: eps'' vanishes at x=" +
                                                      std::to_string(grid.x(i)));
    }
  }

  Eigen::MatrixXcd kernel(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto ss = static_cast<std::size_t>(s);
    const Complex weight = grid.weight(ss) * alpha.eps23[ss] * std::sqrt(alpha.eps23[ss].imag());
    kernel.col(s) = g23.values.col(s) * weight;
  }

  const Complex k = alpha_prefactor(g2.omega, g3.omega);
  Eigen::MatrixXcd rhs(n, n * n);
  for (Eigen::Index x3 = 0; x3 < n; ++x3) {
    for (Eigen::Index x2 = 0; x2 < n; ++x2) {
      const double loss = std::sqrt(std::max(0.0, g2.eps[static_cast<std::size_t>(x2)].imag()) *
                                    std::max(0.0, g3.eps[static_cast<std::size_t>(x3)].imag()));
      for (Eigen::Index r = 0; r < n; ++r) {
        rhs(r, x2 + n * x3) = k * loss * chi[static_cast<std::size_t>(r)] * (g2.values(r, x2) * g3.values(r, x3));
      }
    }
  }
  alpha.values = kernel.partialPivLu().solve(rhs);
  return alpha;
}

double tensor_deviation(const CouplingTensor& a, const CouplingTensor& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    throw Error(ErrorKind::InvalidArgument, "tensors have different shapes");
  }
  const double ref = b.values.cwiseAbs().maxCoeff();
  if (ref == 0.0) return a.values.cwiseAbs().maxCoeff() == 0.0 ? 0.0 : 1.0;
  return (a.values - b.values).cwiseAbs().maxCoeff() / ref;
}

}  // namespace nlqed
