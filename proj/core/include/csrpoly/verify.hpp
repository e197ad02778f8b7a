#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csrpoly/index_maps.hpp"

namespace csrpoly {

struct VerifyOptions {
  /// Largest input dimension for the exhaustive mapping checks (>= 2).
  index_t max_dim = 12;
  /// Random sparse-vs-dense comparisons to run.
  int trials = 25;
  std::uint64_t seed = 0;
};

struct VerifyReport {
  index_t passed = 0;
  index_t failed = 0;
  /// First few failure descriptions.
  std::vector<std::string> failures;

  bool ok() const noexcept { return failed == 0; }
};

using ForwardMapFn = std::function<index_t(const FeatureTuple&, index_t, MappingKind)>;

/// Self-check: for every kind and every dimension up to max_dim, the forward
/// map must send the lexicographic enumeration of valid tuples to 0, 1, 2, ...
/// and invert_map must undo it; then `trials` random matrices are expanded
/// both sparsely and through the dense baseline and compared bit for bit.
///
/// `forward` replaces the library forward map in the mapping checks (used
/// to exercise the failure path). Throws ArgumentError if max_dim < 2 or
/// trials < 0.
VerifyReport run_verify(const VerifyOptions& options, const ForwardMapFn& forward = {});

/// Calls fn(tuple) for every valid tuple of `kind` over `dim` columns in
/// lexicographic order, using plain nested loops.
void for_each_tuple(index_t dim, MappingKind kind, const std::function<void(const FeatureTuple&)>& fn);

}  // namespace csrpoly
