#pragma once

// Reference implementations used only by tests. None of these call into the
// mapping or expansion code they are compared against.

#include <cstdint>
#include <functional>
#include <vector>

#include "csrpoly/csr.hpp"

namespace csrpoly::oracle {

using Tuple = std::vector<index_t>;

/// Every non-decreasing (or strictly increasing) tuple of `degree` indices
/// below `dim`, generated recursively in lexicographic order.
inline std::vector<Tuple> enumerate_tuples(index_t dim, int degree, bool strict) {
  std::vector<Tuple> out;
  Tuple cur;
  std::function<void(index_t)> rec = [&](index_t start) {
    if (static_cast<int>(cur.size()) == degree) {
      out.push_back(cur);
      return;
    }
    for (index_t v = start; v < dim; ++v) {
      cur.push_back(v);
      rec(strict ? v + 1 : v);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Position of t among enumerate_tuples(...) by counting its predecessors.
inline index_t brute_rank(const Tuple& t, index_t dim, int degree, bool strict) {
  index_t rank = 0;
  for (const auto& u : enumerate_tuples(dim, degree, strict)) {
    if (u < t) ++rank;
  }
  return rank;
}

/// Pascal's triangle row by row; exact for the small n used in tests.
inline std::uint64_t pascal_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::uint64_t> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(static_cast<std::size_t>(i) + 1, 1);
    for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(k)];
}

/// Dense monomial expansion of one row: optional bias, optional lower
/// degrees, then the top degree, each block in lexicographic tuple order.
/// Products are accumulated left to right.
inline std::vector<double> expand_row(const std::vector<double>& x, int degree, bool strict,
                                      bool lower, bool bias) {
  std::vector<double> y;
  const auto dim = static_cast<index_t>(x.size());
  if (bias) y.push_back(1.0);
  const int first = lower ? 1 : degree;
  for (int k = first; k <= degree; ++k) {
    for (const auto& t : enumerate_tuples(dim, k, strict)) {
      double p = x[t[0]];
      for (std::size_t q = 1; q < t.size(); ++q) p = p * x[t[q]];
      y.push_back(p);
    }
  }
  return y;
}

/// Sparse result of the monomial oracle, via explicit triplets.
inline CsrMatrix expand_matrix(const CsrMatrix& m, int degree, bool strict, bool lower,
                               bool bias) {
  std::vector<Triplet> trips;
  index_t width = static_cast<index_t>(
      expand_row(std::vector<double>(static_cast<std::size_t>(m.cols()), 0.0), degree, strict,
                 lower, bias)
          .size());
  for (index_t i = 0; i < m.rows(); ++i) {
    std::vector<double> x(static_cast<std::size_t>(m.cols()), 0.0);
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) x[cols[k]] = vals[k];
    const auto y = expand_row(x, degree, strict, lower, bias);
    for (std::size_t c = 0; c < y.size(); ++c) {
      if (y[c] != 0.0) trips.push_back({i, static_cast<index_t>(c), y[c]});
    }
  }
  return canonicalize(m.rows(), width, trips);
}

}  // namespace csrpoly::oracle
