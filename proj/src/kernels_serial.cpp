#include <algorithm>
#include <cmath>
#include <vector>

#include "nlqed/kernels.hpp"

namespace nlqed::kernels::serial {

void fill_green(std::span<const Complex> left, std::span<const Complex> right, Complex inv_wronskian,
                Eigen::MatrixXcd& out) {
  const auto n = static_cast<Eigen::Index>(left.size());
  out.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto lo = static_cast<std::size_t>(std::min(i, j));
      const auto hi = static_cast<std::size_t>(std::max(i, j));
      out(i, j) = -(left[lo] * right[hi]) * inv_wronskian;
    }
  }
}

namespace {

void alpha_column(const AlphaAssembly& in, std::size_t x2, std::size_t x3, std::vector<Complex>& f,
                  std::vector<Complex>& hf, Complex* column) {
  const std::size_t n = in.chi.size();
  const auto& g2 = *in.g2;
  const auto& g3 = *in.g3;
  for (std::size_t x1 = 0; x1 < n; ++x1) {
    const auto r = static_cast<Eigen::Index>(x1);
    f[x1] = in.chi[x1] * (g2(r, static_cast<Eigen::Index>(x2)) * g3(r, static_cast<Eigen::Index>(x3)));
  }
  in.helmholtz->apply(f, hf);
  const double col = std::sqrt(in.col2[x2] * in.col3[x3]);
  for (std::size_t x1 = 0; x1 < n; ++x1) column[x1] = (in.row_factor[x1] * col) * hf[x1];
}

}  // namespace

void assemble_alpha(const AlphaAssembly& in, Eigen::MatrixXcd& out) {
  const std::size_t n = in.chi.size();
  out.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * n));
  std::vector<Complex> f(n), hf(n);
  for (std::size_t x3 = 0; x3 < n; ++x3) {
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (in.mirror && x2 > x3) continue;
      alpha_column(in, x2, x3, f, hf, out.col(static_cast<Eigen::Index>(x2 + n * x3)).data());
    }
  }
  if (in.mirror) {
    for (std::size_t x3 = 0; x3 < n; ++x3) {
      for (std::size_t x2 = x3 + 1; x2 < n; ++x2) {
        out.col(static_cast<Eigen::Index>(x2 + n * x3)) = out.col(static_cast<Eigen::Index>(x3 + n * x2));
      }
    }
  }
}

void contract(const Eigen::MatrixXcd& alpha, std::span<const Complex> coefficient,
              std::span<Complex> out) {
  const auto rows = alpha.rows();
  std::fill(out.begin(), out.begin() + rows, Complex{0.0, 0.0});
  for (Eigen::Index p = 0; p < alpha.cols(); ++p) {
    const Complex c = coefficient[static_cast<std::size_t>(p)];
    if (c == Complex{0.0, 0.0}) continue;
    const Complex* column = alpha.col(p).data();
    for (Eigen::Index r = 0; r < rows; ++r) out[static_cast<std::size_t>(r)] += column[r] * c;
  }
}

}  // namespace nlqed::kernels::serial
