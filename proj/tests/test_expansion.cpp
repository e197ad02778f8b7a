#include <gtest/gtest.h>

#include "csrpoly/expansion.hpp"
#include "oracles.hpp"

namespace csrpoly {
namespace {

const MappingKind kPoly2{2, Mode::Polynomial};
const MappingKind kInter2{2, Mode::Interaction};
const MappingKind kPoly3{3, Mode::Polynomial};
const MappingKind kInter3{3, Mode::Interaction};
const std::array kAllKinds{kPoly2, kInter2, kPoly3, kInter3};

std::vector<ExpansionSpec> all_specs() {
  std::vector<ExpansionSpec> specs;
  for (const auto& kind : kAllKinds) {
    specs.push_back({kind, false, false});
    specs.push_back({kind, true, false});
    specs.push_back({kind, true, true});
  }
  return specs;
}

std::string describe(const ExpansionSpec& s) {
  return to_string(s.kind) + (s.include_lower_degrees ? "+lower" : "") +
         (s.include_bias ? "+bias" : "");
}

CsrMatrix dense_route(const CsrMatrix& m, const ExpansionSpec& spec) {
  return from_dense(expand_dense(to_dense(m), spec));
}

const CsrMatrix kRow(1, 4, {0, 2}, {1, 3}, {2.0, 3.0});  // [0, 2, 0, 3]

TEST(Expand, PolynomialDegreeTwoRow) {
  const CsrMatrix out = expand(kRow, {kPoly2});
  EXPECT_EQ(out, CsrMatrix(1, 10, {0, 3}, {4, 6, 9}, {4.0, 6.0, 9.0}));
}

TEST(Expand, InteractionDegreeTwoRow) {
  const CsrMatrix out = expand(kRow, {kInter2});
  EXPECT_EQ(out, CsrMatrix(1, 6, {0, 1}, {4}, {6.0}));
}

TEST(Expand, AllZeroMatrixKeepsShape) {
  const CsrMatrix zero(3, 7, {0, 0, 0, 0}, {}, {});
  for (const auto& kind : kAllKinds) {
    const CsrMatrix out = expand(zero, {kind});
    EXPECT_EQ(out.rows(), 3);
    EXPECT_EQ(out.cols(), expanded_dim(7, kind));
    EXPECT_EQ(out.nnz(), 0);
  }
}

TEST(Expand, AugmentedLayout) {
  // [bias | x | x_i x_j], D = 4, poly2: 1 + 4 + 10 columns.
  const CsrMatrix out = expand(kRow, {kPoly2, true, true});
  EXPECT_EQ(out, CsrMatrix(1, 15, {0, 6}, {0, 2, 4, 9, 11, 14}, {1.0, 2.0, 3.0, 4.0, 6.0, 9.0}));
  // Degree 3 with lower degrees: [x | degree 2 | degree 3], inter mode.
  const CsrMatrix row3(1, 4, {0, 3}, {0, 1, 3}, {2.0, 3.0, 5.0});
  const CsrMatrix out3 = expand(row3, {kInter3, true, false});
  EXPECT_EQ(out3.cols(), 4 + 6 + 4);
  // x: cols 0,1,3; pairs (0,1)->0,(0,3)->2,(1,3)->4 at offset 4; triple (0,1,3)->1 at offset 10.
  EXPECT_EQ(out3, CsrMatrix(1, 14, {0, 7}, {0, 1, 3, 4, 6, 8, 11},
                            {2.0, 3.0, 5.0, 6.0, 10.0, 15.0, 30.0}));
}

TEST(ExpandDense, PolynomialDegreeTwoRow) {
  const DenseMatrix out = expand_dense(to_dense(kRow), {kPoly2});
  EXPECT_EQ(std::vector<double>(out.entries().begin(), out.entries().end()),
            (std::vector<double>{0, 0, 0, 0, 4, 0, 6, 0, 0, 9}));
}

TEST(ExpandDense, AllOnesInteraction) {
  const DenseMatrix ones(1, 4, {1, 1, 1, 1});
  const DenseMatrix out = expand_dense(ones, {kInter2});
  EXPECT_EQ(std::vector<double>(out.entries().begin(), out.entries().end()),
            std::vector<double>(6, 1.0));
}

TEST(ExpandDense, MatchesMonomialOracle) {
  for (const auto& spec : all_specs()) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const CsrMatrix m = random_csr(4, 6, 0.6, seed);
      const bool strict = spec.kind.mode() == Mode::Interaction;
      EXPECT_TRUE(dense_route(m, spec).identical_to(oracle::expand_matrix(
          m, spec.kind.degree(), strict, spec.include_lower_degrees, spec.include_bias)))
          << describe(spec) << " seed " << seed;
    }
  }
}

TEST(Expand, OracleEquivalenceRandom) {
  const double densities[] = {0.0, 0.1, 0.35, 0.8, 1.0};
  for (const auto& spec : all_specs()) {
    for (int trial = 0; trial < 50; ++trial) {
      const index_t rows = 1 + trial % 7;
      const index_t dim = 1 + (trial * 5) % 19;
      const CsrMatrix m = random_csr(rows, dim, densities[trial % 5], 1000 + trial);
      const CsrMatrix sparse = expand(m, spec);
      EXPECT_TRUE(sparse.identical_to(dense_route(m, spec)))
          << describe(spec) << " trial " << trial;
    }
  }
}

TEST(Expand, DegreeThreeRandomAgreesWithOracle) {
  const CsrMatrix m = random_csr(3, 5, 0.7, 8);
  EXPECT_TRUE(expand(m, {kPoly3}).identical_to(oracle::expand_matrix(m, 3, false, false, false)));
}

TEST(Expand, RowCountsAndCanonicalOutput) {
  for (const auto& spec : all_specs()) {
    const CsrMatrix m = random_csr(40, 25, 0.3, 77);
    const CsrMatrix out = expand(m, spec);
    EXPECT_NO_THROW(out.validate()) << describe(spec);
    EXPECT_EQ(out.cols(), expanded_width(25, spec));
    for (index_t i = 0; i < m.rows(); ++i) {
      const index_t nnz = m.row_nnz(i);
      index_t expected = row_output_nnz(nnz, spec.kind);
      if (spec.include_lower_degrees) {
        expected += nnz;
        if (spec.kind.degree() == 3) expected += row_output_nnz(nnz, {2, spec.kind.mode()});
      }
      if (spec.include_bias) expected += 1;
      EXPECT_EQ(out.row_nnz(i), expected) << describe(spec) << " row " << i;
    }
  }
}

TEST(Expand, InstrumentedCountsProducts) {
  const CsrMatrix m = random_csr(30, 40, 0.25, 5);
  for (const auto& kind : kAllKinds) {
    ExpansionStats stats;
    const CsrMatrix out = expand_instrumented(m, {kind}, stats);
    EXPECT_TRUE(out.identical_to(expand(m, {kind})));
    index_t expected = 0;
    for (index_t i = 0; i < m.rows(); ++i) {
      const auto n = static_cast<int>(m.row_nnz(i));
      expected += static_cast<index_t>(kind.mode() == Mode::Polynomial
                                           ? oracle::pascal_binomial(n + kind.degree() - 1, kind.degree())
                                           : oracle::pascal_binomial(n, kind.degree()));
    }
    EXPECT_EQ(stats.products(), expected) << to_string(kind);
    EXPECT_EQ(stats.multiplications(), expected * (kind.degree() - 1));
  }
  ExpansionStats stats;
  expand_instrumented(m, {kPoly3, true, true}, stats);
  EXPECT_EQ(stats.entries_by_degree[0], 0);  // bias and copies are not products
  EXPECT_EQ(stats.entries_by_degree[1], 0);
  EXPECT_GT(stats.entries_by_degree[2], 0);
  EXPECT_GT(stats.entries_by_degree[3], 0);
}

TEST(Expand, ThreadCountDoesNotChangeResult) {
  const CsrMatrix m = random_csr(97, 60, 0.2, 3);
  for (const auto& spec : all_specs()) {
    const CsrMatrix ref = expand(m, spec);
    for (unsigned threads : {2u, 3u, 8u, 200u}) {
      EXPECT_TRUE(expand(m, spec, {threads}).identical_to(ref)) << describe(spec) << threads;
    }
  }
}

TEST(Expand, Deterministic) {
  const CsrMatrix m = random_csr(20, 30, 0.3, 1);
  EXPECT_TRUE(expand(m, {kPoly3}).identical_to(expand(m, {kPoly3})));
}

TEST(Expand, StoredZerosProduceStoredZeros) {
  const CsrMatrix m(1, 3, {0, 2}, {0, 2}, {0.0, 2.0});
  const CsrMatrix out = expand(m, {kPoly2});
  EXPECT_EQ(out, CsrMatrix(1, 6, {0, 3}, {0, 2, 5}, {0.0, 0.0, 4.0}));
}

TEST(Expand, Errors) {
  EXPECT_THROW(expand(kRow, {kPoly2, false, true}), ArgumentError);
  const CsrMatrix wide(1, 5000000, {0, 1}, {0}, {1.0});
  EXPECT_THROW(expand(wide, {kPoly3}), OverflowError);
  EXPECT_THROW(expanded_width(4294967296, {kPoly2}), OverflowError);
}

TEST(FeatureNames, Examples) {
  auto tuples = [](const std::vector<FeatureName>& names) {
    std::vector<FeatureTuple> out;
    for (const auto& n : names) out.push_back(n.tuple);
    return out;
  };
  EXPECT_EQ(tuples(feature_names(4, {kInter2})),
            (std::vector<FeatureTuple>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(tuples(feature_names(1, {kPoly2})), (std::vector<FeatureTuple>{{0, 0}}));
  EXPECT_EQ(tuples(feature_names(5, {kInter3})),
            (std::vector<FeatureTuple>{{0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
                                       {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}));
}

TEST(FeatureNames, AugmentedBlocks) {
  const auto names = feature_names(3, {kPoly3, true, true});
  ASSERT_EQ(static_cast<index_t>(names.size()), expanded_width(3, {kPoly3, true, true}));
  EXPECT_EQ(names[0].block, Block::Bias);
  EXPECT_TRUE(names[0].tuple.empty());
  EXPECT_EQ(names[1].block, Block::Degree1);
  EXPECT_EQ(names[3].tuple, FeatureTuple{2});
  EXPECT_EQ(names[4].block, Block::Degree2);
  EXPECT_EQ(names[4].tuple, (FeatureTuple{0, 0}));
  EXPECT_EQ(names[10].block, Block::Degree3);
  EXPECT_EQ(names[10].tuple, (FeatureTuple{0, 0, 0}));
  EXPECT_EQ(names.back().tuple, (FeatureTuple{2, 2, 2}));
}

TEST(FeatureNames, NameEveryProducedColumn) {
  // Each output entry's value equals the product of the inputs its name lists.
  const CsrMatrix m = random_csr(5, 8, 0.5, 21);
  for (const auto& spec : all_specs()) {
    const auto names = feature_names(m.cols(), spec);
    const CsrMatrix out = expand(m, spec);
    const DenseMatrix x = to_dense(m);
    for (index_t i = 0; i < out.rows(); ++i) {
      auto cols = out.row_cols(i);
      auto vals = out.row_values(i);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        const auto& name = names[static_cast<std::size_t>(cols[k])];
        double p = 1.0;
        bool first = true;
        for (index_t j : name.tuple) {
          p = first ? x(i, j) : p * x(i, j);
          first = false;
        }
        EXPECT_EQ(vals[k], p) << describe(spec);
      }
    }
  }
}

}  // namespace
}  // namespace csrpoly
