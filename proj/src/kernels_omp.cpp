#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

#include "nlqed/kernels.hpp"

namespace nlqed::kernels::omp {

void fill_green(std::span<const Complex> left, std::span<const Complex> right, Complex inv_wronskian,
                Eigen::MatrixXcd& out) {
  const auto n = static_cast<Eigen::Index>(left.size());
  out.resize(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto lo = static_cast<std::size_t>(std::min(i, j));
      const auto hi = static_cast<std::size_t>(std::max(i, j));
      out(i, j) = -(left[lo] * right[hi]) * inv_wronskian;
    }
  }
}

void assemble_alpha(const AlphaAssembly& in, Eigen::MatrixXcd& out) {
  const std::size_t n = in.chi.size();
  const auto cols = static_cast<long>(n * n);
  out.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
  const auto& g2 = *in.g2;
  const auto& g3 = *in.g3;
#pragma omp parallel
  {
    std::vector<Complex> f(n), hf(n);
#pragma omp for schedule(dynamic, 64)
    for (long p = 0; p < cols; ++p) {
      const std::size_t x2 = static_cast<std::size_t>(p) % n;
      const std::size_t x3 = static_cast<std::size_t>(p) / n;
      if (in.mirror && x2 > x3) continue;
      for (std::size_t x1 = 0; x1 < n; ++x1) {
        const auto r = static_cast<Eigen::Index>(x1);
        f[x1] = in.chi[x1] * (g2(r, static_cast<Eigen::Index>(x2)) * g3(r, static_cast<Eigen::Index>(x3)));
      }
      in.helmholtz->apply(f, hf);
      const double col = std::sqrt(in.col2[x2] * in.col3[x3]);
      Complex* column = out.col(static_cast<Eigen::Index>(p)).data();
      for (std::size_t x1 = 0; x1 < n; ++x1) column[x1] = (in.row_factor[x1] * col) * hf[x1];
    }
    if (in.mirror) {
#pragma omp for schedule(static)
      for (long p = 0; p < cols; ++p) {
        const std::size_t x2 = static_cast<std::size_t>(p) % n;
        const std::size_t x3 = static_cast<std::size_t>(p) / n;
        if (x2 <= x3) continue;
        out.col(static_cast<Eigen::Index>(p)) = out.col(static_cast<Eigen::Index>(x3 + n * x2));
      }
    }
  }
}

void contract(const Eigen::MatrixXcd& alpha, std::span<const Complex> coefficient,
              std::span<Complex> out) {
  const auto rows = static_cast<long>(alpha.rows());
  const auto cols = alpha.cols();
  constexpr long kBlock = 64;
  const long blocks = (rows + kBlock - 1) / kBlock;
#pragma omp parallel for schedule(static)
  for (long b = 0; b < blocks; ++b) {
    const long r0 = b * kBlock;
    const long r1 = std::min(rows, r0 + kBlock);
    for (long r = r0; r < r1; ++r) out[static_cast<std::size_t>(r)] = Complex{0.0, 0.0};
    for (Eigen::Index p = 0; p < cols; ++p) {
      const Complex c = coefficient[static_cast<std::size_t>(p)];
      if (c == Complex{0.0, 0.0}) continue;
      const Complex* column = alpha.col(p).data();
      for (long r = r0; r < r1; ++r) out[static_cast<std::size_t>(r)] += column[r] * c;
    }
  }
}

void set_thread_limit(int threads) {
  if (threads > 0) {
    omp_set_num_threads(threads);
  } else {
    omp_set_num_threads(omp_get_num_procs());
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace nlqed::kernels::omp
