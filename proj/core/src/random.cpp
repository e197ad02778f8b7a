#include <random>

#include "csrpoly/csr.hpp"

namespace csrpoly {

namespace {
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
}

CsrMatrix random_csr(index_t n_rows, index_t n_cols, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw ArgumentError("density must lie in [0, 1]");
  }
  if (n_rows < 0 || n_cols < 0) {
    throw ArgumentError("matrix dimensions must be non-negative");
  }
  checked::mul(n_rows, n_cols, "random matrix size");

  std::mt19937_64 gen(seed);
  std::vector<index_t> row_ptr;
  row_ptr.reserve(static_cast<std::size_t>(n_rows) + 1);
  row_ptr.push_back(0);
  detail::Buffer<index_t> cols;
  detail::Buffer<double> vals;
  const auto expected = static_cast<std::size_t>(static_cast<double>(n_rows) *
                                                 static_cast<double>(n_cols) * density);
  cols.reserve(expected);
  vals.reserve(expected);

  for (index_t i = 0; i < n_rows; ++i) {
    for (index_t j = 0; j < n_cols; ++j) {
      const double u = static_cast<double>(gen() >> 11) * kTwoPowMinus53;
      if (u < density) {
        cols.push_back(j);
        vals.push_back(static_cast<double>((gen() >> 11) + 1) * kTwoPowMinus53);
      }
    }
    row_ptr.push_back(static_cast<index_t>(cols.size()));
  }
  return {detail::TrustedTag{}, n_rows, n_cols, std::move(row_ptr), std::move(cols),
          std::move(vals)};
}

}  // namespace csrpoly
