#pragma once

// Data-parallel inner loops. Each kernel exists twice: an OpenMP version
// used by the library and a serial reference kept for tests and benchmarks.
// Both compute every output element with the same arithmetic, so their
// results agree bit for bit.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nlqed/core.hpp"
#include "nlqed/greens.hpp"

namespace nlqed::kernels {

/// Inputs of the coupling-tensor assembly
///   alpha(x1, x2, x3) = row(x1) * col2(x2) * col3(x3)
///                       * H[chi(.) g2(., x2) g3(., x3)](x1)
/// stored column-major with column p = x2 + n * x3.
struct AlphaAssembly {
  const Eigen::MatrixXcd* g2 = nullptr;
  const Eigen::MatrixXcd* g3 = nullptr;
  std::span<const Complex> chi;
  std::span<const Complex> row_factor;
  std::span<const double> col2;
  std::span<const double> col3;
  const HelmholtzOperator* helmholtz = nullptr;
  bool mirror = false;  // g2 == g3: fill x2 <= x3 and copy to x3 < x2
};

namespace serial {

void fill_green(std::span<const Complex> left, std::span<const Complex> right, Complex inv_wronskian,
                Eigen::MatrixXcd& out);
void assemble_alpha(const AlphaAssembly& in, Eigen::MatrixXcd& out);
/// out(x1) = sum_p alpha(x1, p) coefficient(p)
void contract(const Eigen::MatrixXcd& alpha, std::span<const Complex> coefficient,
              std::span<Complex> out);

}  // namespace serial

namespace omp {

void fill_green(std::span<const Complex> left, std::span<const Complex> right, Complex inv_wronskian,
                Eigen::MatrixXcd& out);
void assemble_alpha(const AlphaAssembly& in, Eigen::MatrixXcd& out);
void contract(const Eigen::MatrixXcd& alpha, std::span<const Complex> coefficient,
              std::span<Complex> out);

/// Caps the worker count; 0 restores the runtime default.
void set_thread_limit(int threads);
int max_threads();

}  // namespace omp

}  // namespace nlqed::kernels
