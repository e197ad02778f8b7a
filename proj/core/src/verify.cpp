#include "csrpoly/verify.hpp"

#include <array>
#include <random>

#include "csrpoly/expansion.hpp"

namespace csrpoly {

void for_each_tuple(index_t dim, MappingKind kind,
                    const std::function<void(const FeatureTuple&)>& fn) {
  const index_t s = kind.mode() == Mode::Interaction ? 1 : 0;
  for (index_t i = 0; i < dim; ++i) {
    for (index_t j = i + s; j < dim; ++j) {
      if (kind.degree() == 2) {
        fn({i, j});
        continue;
      }
      for (index_t k = j + s; k < dim; ++k) fn({i, j, k});
    }
  }
}

VerifyReport run_verify(const VerifyOptions& options, const ForwardMapFn& forward) {
  if (options.max_dim < 2) throw ArgumentError("max_dim must be at least 2");
  if (options.trials < 0) throw ArgumentError("trials must be non-negative");
  const ForwardMapFn fwd =
      forward ? forward : [](const FeatureTuple& t, index_t d, MappingKind k) {
        return forward_map(t, d, k);
      };

  VerifyReport report;
  auto record = [&](bool ok, const std::string& what) {
    if (ok) {
      ++report.passed;
      return;
    }
    ++report.failed;
    if (report.failures.size() < 20) report.failures.push_back(what);
  };

  const std::array kinds{MappingKind{2, Mode::Polynomial}, MappingKind{2, Mode::Interaction},
                         MappingKind{3, Mode::Polynomial}, MappingKind{3, Mode::Interaction}};
  for (const auto& kind : kinds) {
    for (index_t dim = 1; dim <= options.max_dim; ++dim) {
      const std::string where = to_string(kind) + " D=" + std::to_string(dim);
      index_t expected = 0;
      bool bijective = true;
      bool inverse = true;
      for_each_tuple(dim, kind, [&](const FeatureTuple& t) {
        index_t col = -1;
        try {
          col = fwd(t, dim, kind);
        } catch (const Error&) {
        }
        bijective = bijective && col == expected;
        try {
          inverse = inverse && invert_map(expected, dim, kind) == t;
        } catch (const Error&) {
          inverse = false;
        }
        ++expected;
      });
      record(bijective && expected == expanded_dim(dim, kind),
             "forward map is not the ordered bijection for " + where);
      record(inverse, "invert_map round trip fails for " + where);
    }
  }

  std::mt19937_64 gen(options.seed);
  constexpr std::array densities{0.0, 0.05, 0.3, 0.7, 1.0};
  for (int trial = 0; trial < options.trials; ++trial) {
    const index_t rows = 1 + static_cast<index_t>(gen() % 20);
    const index_t dim = 1 + static_cast<index_t>(gen() % static_cast<std::uint64_t>(options.max_dim));
    const double density = densities[gen() % densities.size()];
    const MappingKind kind(2 + static_cast<int>(gen() % 2),
                           gen() % 2 ? Mode::Interaction : Mode::Polynomial);
    ExpansionSpec spec{kind};
    spec.include_lower_degrees = gen() % 2 == 1;
    spec.include_bias = spec.include_lower_degrees && gen() % 2 == 1;
    const CsrMatrix m = random_csr(rows, dim, density, gen());

    const CsrMatrix sparse = expand(m, spec);
    const CsrMatrix dense = from_dense(expand_dense(to_dense(m), spec));
    record(sparse.identical_to(dense),
           "sparse and dense expansions differ in trial " + std::to_string(trial) + " (" +
               to_string(kind) + ", " + std::to_string(rows) + "x" + std::to_string(dim) + ")");
  }
  return report;
}

}  // namespace csrpoly
