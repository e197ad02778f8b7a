#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csrpoly/index_maps.hpp"

namespace csrpoly {

/// Which parameter a scaling study sweeps.
enum class Vary { Density, Dimension, Rows };
enum class Algorithm { Sparse, Dense };

std::string_view to_string(Vary v) noexcept;
std::string_view to_string(Algorithm a) noexcept;
/// "density"/"d", "dim"/"D", "rows"/"N". Throws ArgumentError.
Vary parse_vary(std::string_view text);
/// "sparse", "dense". Throws ArgumentError.
Algorithm parse_algorithm(std::string_view text);

inline constexpr std::size_t kDefaultDenseMemoryCap = std::size_t{2} << 30;

/// One scaling study: sweep `vary` over `values`, holding the other two
/// parameters at their fixed values.
struct BenchConfig {
  Vary vary = Vary::Density;
  std::vector<double> values;
  index_t fixed_n_rows = 100;
  index_t fixed_n_cols = 500;
  double fixed_density = 0.1;
  std::vector<MappingKind> kinds;
  std::vector<Algorithm> algorithms{Algorithm::Sparse, Algorithm::Dense};
  int repetitions = 20;
  std::uint64_t seed = 0;
  /// Untimed runs before each timed one.
  int warmup = 0;
  /// Dense points whose input plus output would exceed this are skipped.
  std::size_t dense_memory_cap_bytes = kDefaultDenseMemoryCap;
  /// On glibc, switch the process allocator to keep freed memory instead of
  /// returning it to the OS, so timings exclude fresh page faults. The
  /// setting stays in effect after run_bench returns.
  bool retain_freed_memory = true;

  /// Throws ArgumentError.
  void validate() const;
};

struct GridPoint {
  index_t n_rows;
  index_t n_cols;
  double density;
};

/// Shape and density at position `index` of the sweep.
GridPoint grid_point(const BenchConfig& config, std::size_t index);

/// Seed of the matrix generated for (grid point, repetition).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t rep) noexcept;

struct BenchRecord {
  Algorithm algorithm;
  int degree;
  Mode mode;
  index_t n_rows;
  index_t n_cols;
  double density;
  int rep;
  double wall_seconds;
  index_t nnz_in;
  index_t nnz_out;
  index_t product_count;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// A (grid point, kind, algorithm) combination that was not run.
struct SkippedPoint {
  Algorithm algorithm;
  MappingKind kind;
  GridPoint point;
  std::string reason;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<SkippedPoint> skipped;
};

/// Runs the study sequentially on one thread. Records are ordered by grid
/// point, then repetition, then kind, then algorithm. Only the expansion
/// call is timed; dense inputs are densified before the clock starts.
BenchResult run_bench(const BenchConfig& config);

/// Ordinary least-squares slope of log(y) against log(x). Needs at least
/// three strictly positive points; throws ArgumentError otherwise.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

/// Mean wall time per distinct value of the swept parameter.
struct MeanSeries {
  std::vector<double> x;
  std::vector<double> mean_seconds;
};

MeanSeries mean_series(std::span<const BenchRecord> records, Algorithm algorithm,
                       MappingKind kind, Vary vary);

inline constexpr std::string_view kCsvHeader =
    "algorithm,degree,mode,n_rows,n_cols,density,rep,wall_seconds,nnz_in,nnz_out,product_count";

void write_csv(std::span<const BenchRecord> records, std::ostream& out);
void write_csv(std::span<const BenchRecord> records, const std::filesystem::path& path);
/// Throws ParseError.
std::vector<BenchRecord> read_csv(std::istream& in);
std::vector<BenchRecord> read_csv(const std::filesystem::path& path);

}  // namespace csrpoly
