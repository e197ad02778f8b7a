#pragma once

#include <array>
#include <vector>

#include "csrpoly/csr.hpp"
#include "csrpoly/index_maps.hpp"

namespace csrpoly {

/// What to expand: the top-degree mapping plus optional lower-degree and
/// bias blocks.
struct ExpansionSpec {
  MappingKind kind;
  bool include_lower_degrees = false;
  /// Requires include_lower_degrees.
  bool include_bias = false;

  /// Throws ArgumentError when include_bias is set without lower degrees.
  void validate() const;
};

enum class Block { Bias, Degree1, Degree2, Degree3 };

/// One contiguous range of output columns.
struct ColumnBlock {
  Block block;
  int degree;  // 0 for the bias column
  index_t offset;
  index_t width;
};

/// Output column layout: [bias | degree 1 | degree 2 | degree 3], present
/// blocks only, with cumulative offsets. Degree-2 and degree-3 blocks use
/// spec.kind.mode(). Throws OverflowError.
std::vector<ColumnBlock> column_blocks(index_t dim, const ExpansionSpec& spec);

/// Total output columns. Throws OverflowError.
index_t expanded_width(index_t dim, const ExpansionSpec& spec);

/// Stored entries produced for an input row with `nnz` stored entries,
/// summed over all blocks. Throws OverflowError.
index_t expanded_row_nnz(index_t nnz, const ExpansionSpec& spec);

struct ExpandOptions {
  /// Worker threads for the fill pass. The result does not depend on it.
  unsigned threads = 1;
};

/// Entry counts recorded by expand_instrumented, indexed by block degree.
struct ExpansionStats {
  std::array<index_t, 4> entries_by_degree{};

  /// Entries formed as a product of two or more stored values.
  index_t products() const noexcept { return entries_by_degree[2] + entries_by_degree[3]; }
  /// Degree-K entries cost K - 1 multiplications each.
  index_t multiplications() const noexcept {
    return entries_by_degree[2] + 2 * entries_by_degree[3];
  }
};

/// Sparse expansion of a CSR matrix, never densifying.
///
/// Pass one sizes every output row from its input nnz and builds the output
/// row pointers; pass two walks each row's stored entries in nested loops
/// (inner loop starting at the outer position for Polynomial, one past it
/// for Interaction) and writes products together with their mapped columns.
/// Output is canonical. Stored zeros in the input yield stored zeros.
///
/// Throws OverflowError if the output width or nnz do not fit in index_t.
CsrMatrix expand(const CsrMatrix& m, const ExpansionSpec& spec, const ExpandOptions& options = {});

/// Same result as expand(); also counts every entry it writes.
CsrMatrix expand_instrumented(const CsrMatrix& m, const ExpansionSpec& spec,
                              ExpansionStats& stats);

/// Dense baseline: every combination of columns in each row, in the same
/// column order as expand(), written through a running column counter.
DenseMatrix expand_dense(const DenseMatrix& m, const ExpansionSpec& spec);

struct FeatureName {
  Block block;
  /// Empty for the bias column, one index for degree 1.
  FeatureTuple tuple;
};

/// Names of all output columns, position q describing column q.
std::vector<FeatureName> feature_names(index_t dim, const ExpansionSpec& spec);

}  // namespace csrpoly
