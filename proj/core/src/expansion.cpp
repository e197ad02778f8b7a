#include "csrpoly/expansion.hpp"

#include <algorithm>
#include <thread>

namespace csrpoly {

namespace {

/// Per-row output cursors.
struct Cursor {
  index_t* col;
  double* val;
};

template <bool Count>
struct Tally {
  void add(int /*degree*/) noexcept {}
};

template <>
struct Tally<true> {
  ExpansionStats* stats;
  void add(int degree) noexcept { ++stats->entries_by_degree[degree]; }
};

template <Mode M, bool Count>
void fill_degree2(std::span<const index_t> cols, std::span<const double> vals, index_t dim,
                  index_t offset, Cursor& out, Tally<Count>& tally) {
  constexpr std::size_t step = M == Mode::Interaction ? 1 : 0;
  const std::size_t n = cols.size();
  for (std::size_t a = 0; a < n; ++a) {
    const index_t ja = cols[a];
    const double va = vals[a];
    for (std::size_t b = a + step; b < n; ++b) {
      if constexpr (M == Mode::Polynomial) {
        *out.col++ = offset + detail::map2_polynomial(ja, cols[b], dim);
      } else {
        *out.col++ = offset + detail::map2_interaction(ja, cols[b], dim);
      }
      *out.val++ = va * vals[b];
      tally.add(2);
    }
  }
}

template <Mode M, bool Count>
void fill_degree3(std::span<const index_t> cols, std::span<const double> vals, index_t dim,
                  index_t offset, Cursor& out, Tally<Count>& tally) {
  constexpr std::size_t step = M == Mode::Interaction ? 1 : 0;
  const std::size_t n = cols.size();
  for (std::size_t a = 0; a < n; ++a) {
    const index_t ja = cols[a];
    const double va = vals[a];
    for (std::size_t b = a + step; b < n; ++b) {
      const index_t jb = cols[b];
      const double vab = va * vals[b];
      for (std::size_t c = b + step; c < n; ++c) {
        if constexpr (M == Mode::Polynomial) {
          *out.col++ = offset + detail::map3_polynomial(ja, jb, cols[c], dim);
        } else {
          *out.col++ = offset + detail::map3_interaction(ja, jb, cols[c], dim);
        }
        *out.val++ = vab * vals[c];
        tally.add(3);
      }
    }
  }
}

template <Mode M, bool Count>
void fill_rows(const CsrMatrix& m, std::span<const ColumnBlock> blocks, index_t row_begin,
               index_t row_end, std::span<const index_t> out_row_ptr, index_t* out_cols,
               double* out_vals, Tally<Count> tally) {
  const index_t dim = m.cols();
  for (index_t i = row_begin; i < row_end; ++i) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_values(i);
    Cursor out{out_cols + out_row_ptr[i], out_vals + out_row_ptr[i]};
    for (const auto& blk : blocks) {
      switch (blk.block) {
        case Block::Bias:
          *out.col++ = blk.offset;
          *out.val++ = 1.0;
          break;
        case Block::Degree1:
          for (std::size_t k = 0; k < cols.size(); ++k) {
            *out.col++ = blk.offset + cols[k];
            *out.val++ = vals[k];
          }
          break;
        case Block::Degree2:
          fill_degree2<M>(cols, vals, dim, blk.offset, out, tally);
          break;
        case Block::Degree3:
          fill_degree3<M>(cols, vals, dim, blk.offset, out, tally);
          break;
      }
    }
  }
}

template <bool Count>
CsrMatrix expand_impl(const CsrMatrix& m, const ExpansionSpec& spec, unsigned threads,
                      Tally<Count> tally) {
  spec.validate();
  const auto blocks = column_blocks(m.cols(), spec);
  const index_t width = blocks.empty() ? 0 : blocks.back().offset + blocks.back().width;

  // Pass one: output row extents.
  std::vector<index_t> row_ptr(static_cast<std::size_t>(m.rows()) + 1, 0);
  for (index_t i = 0; i < m.rows(); ++i) {
    row_ptr[i + 1] = checked::add(row_ptr[i], expanded_row_nnz(m.row_nnz(i), spec),
                                  "expanded nnz");
  }
  const index_t nnz_out = row_ptr.back();

  // Pass two: fill preallocated buffers.
  detail::Buffer<index_t> cols(static_cast<std::size_t>(nnz_out));
  detail::Buffer<double> vals(static_cast<std::size_t>(nnz_out));

  auto run = [&](index_t r0, index_t r1) {
    if (spec.kind.mode() == Mode::Polynomial) {
      fill_rows<Mode::Polynomial>(m, blocks, r0, r1, row_ptr, cols.data(), vals.data(), tally);
    } else {
      fill_rows<Mode::Interaction>(m, blocks, r0, r1, row_ptr, cols.data(), vals.data(), tally);
    }
  };

  const index_t workers = std::min<index_t>(std::max(1u, threads), m.rows());
  if (Count || workers <= 1) {
    run(0, m.rows());
  } else {
    // Split rows so each worker gets roughly the same number of outputs.
    std::vector<index_t> bounds{0};
    for (index_t w = 1; w < workers; ++w) {
      const index_t target = nnz_out / workers * w;
      auto it = std::lower_bound(row_ptr.begin(), row_ptr.end(), target);
      bounds.push_back(std::max(bounds.back(), static_cast<index_t>(it - row_ptr.begin())));
    }
    bounds.push_back(m.rows());
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w + 1 < bounds.size(); ++w) {
      if (bounds[w] < bounds[w + 1]) pool.emplace_back(run, bounds[w], bounds[w + 1]);
    }
  }

  return {detail::TrustedTag{}, m.rows(), width, std::move(row_ptr), std::move(cols),
          std::move(vals)};
}

}  // namespace

void ExpansionSpec::validate() const {
  if (include_bias && !include_lower_degrees) {
    throw ArgumentError("include_bias requires include_lower_degrees");
  }
}

std::vector<ColumnBlock> column_blocks(index_t dim, const ExpansionSpec& spec) {
  spec.validate();
  if (dim < 0) throw DomainError("dimension must be non-negative");
  std::vector<ColumnBlock> blocks;
  index_t offset = 0;
  auto push = [&](Block b, int degree, index_t width) {
    blocks.push_back({b, degree, offset, width});
    offset = checked::add(offset, width, "expanded width");
  };
  const int top = spec.kind.degree();
  if (spec.include_bias) push(Block::Bias, 0, 1);
  if (spec.include_lower_degrees) push(Block::Degree1, 1, dim);
  if (spec.include_lower_degrees || top == 2) {
    push(Block::Degree2, 2, expanded_dim(dim, {2, spec.kind.mode()}));
  }
  if (top == 3) push(Block::Degree3, 3, expanded_dim(dim, {3, spec.kind.mode()}));
  return blocks;
}

index_t expanded_width(index_t dim, const ExpansionSpec& spec) {
  const auto blocks = column_blocks(dim, spec);
  return blocks.back().offset + blocks.back().width;
}

index_t expanded_row_nnz(index_t nnz, const ExpansionSpec& spec) {
  spec.validate();
  const Mode mode = spec.kind.mode();
  index_t total = 0;
  if (spec.include_bias) total = 1;
  if (spec.include_lower_degrees) {
    total = checked::add(total, nnz);
    if (spec.kind.degree() == 3) total = checked::add(total, row_output_nnz(nnz, {2, mode}));
  }
  return checked::add(total, row_output_nnz(nnz, spec.kind), "expanded row nnz");
}

CsrMatrix expand(const CsrMatrix& m, const ExpansionSpec& spec, const ExpandOptions& options) {
  return expand_impl(m, spec, options.threads, Tally<false>{});
}

CsrMatrix expand_instrumented(const CsrMatrix& m, const ExpansionSpec& spec,
                              ExpansionStats& stats) {
  stats = {};
  return expand_impl(m, spec, 1, Tally<true>{&stats});
}

DenseMatrix expand_dense(const DenseMatrix& m, const ExpansionSpec& spec) {
  const auto blocks = column_blocks(m.cols(), spec);
  const index_t width = blocks.back().offset + blocks.back().width;
  DenseMatrix out(m.rows(), width);
  const index_t dim = m.cols();
  const index_t step = spec.kind.mode() == Mode::Interaction ? 1 : 0;

  for (index_t i = 0; i < m.rows(); ++i) {
    const auto x = m.row(i);
    const auto y = out.row(i);
    index_t cp = 0;
    for (const auto& blk : blocks) {
      switch (blk.block) {
        case Block::Bias:
          y[cp++] = 1.0;
          break;
        case Block::Degree1:
          for (index_t a = 0; a < dim; ++a) y[cp++] = x[a];
          break;
        case Block::Degree2:
          for (index_t a = 0; a < dim; ++a) {
            for (index_t b = a + step; b < dim; ++b) y[cp++] = x[a] * x[b];
          }
          break;
        case Block::Degree3:
          for (index_t a = 0; a < dim; ++a) {
            for (index_t b = a + step; b < dim; ++b) {
              const double xab = x[a] * x[b];
              for (index_t c = b + step; c < dim; ++c) y[cp++] = xab * x[c];
            }
          }
          break;
      }
    }
  }
  return out;
}

std::vector<FeatureName> feature_names(index_t dim, const ExpansionSpec& spec) {
  const auto blocks = column_blocks(dim, spec);
  std::vector<FeatureName> names;
  names.reserve(static_cast<std::size_t>(blocks.back().offset + blocks.back().width));
  for (const auto& blk : blocks) {
    switch (blk.block) {
      case Block::Bias:
        names.push_back({blk.block, {}});
        break;
      case Block::Degree1:
        for (index_t j = 0; j < dim; ++j) names.push_back({blk.block, {j}});
        break;
      case Block::Degree2:
      case Block::Degree3: {
        const MappingKind kind(blk.degree, spec.kind.mode());
        for (index_t q = 0; q < blk.width; ++q) {
          names.push_back({blk.block, invert_map(q, dim, kind)});
        }
        break;
      }
    }
  }
  return names;
}

}  // namespace csrpoly
