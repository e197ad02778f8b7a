#include "csrpoly/bench.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "csrpoly/expansion.hpp"
#include "csrpoly/format.hpp"

#if defined(__GLIBC__)
#include <malloc.h>
#endif

namespace csrpoly {

namespace {

index_t integral_value(double v, const char* what) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 9.0e18) {
    throw ArgumentError(std::string(what) + " values must be positive integers");
  }
  return static_cast<index_t>(v);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void retain_freed_memory() {
#if defined(__GLIBC__)
  // Serve every allocation from the heap and never trim it, so a repetition
  // reuses pages faulted in by the previous one instead of mapping fresh ones.
  mallopt(M_MMAP_MAX, 0);
  mallopt(M_TRIM_THRESHOLD, -1);  // -1 disables trimming
#endif
}

index_t count_nonzero(const DenseMatrix& m) {
  index_t n = 0;
  for (double v : m.entries()) n += v != 0.0;
  return n;
}

}  // namespace

std::string_view to_string(Vary v) noexcept {
  switch (v) {
    case Vary::Density: return "density";
    case Vary::Dimension: return "dim";
    case Vary::Rows: return "rows";
  }
  return "?";
}

std::string_view to_string(Algorithm a) noexcept {
  return a == Algorithm::Sparse ? "sparse" : "dense";
}

Vary parse_vary(std::string_view text) {
  if (text == "density" || text == "d") return Vary::Density;
  if (text == "dim" || text == "D" || text == "cols") return Vary::Dimension;
  if (text == "rows" || text == "N") return Vary::Rows;
  throw ArgumentError("unknown sweep parameter '" + std::string(text) + "'");
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "sparse") return Algorithm::Sparse;
  if (text == "dense") return Algorithm::Dense;
  throw ArgumentError("unknown algorithm '" + std::string(text) + "'");
}

void BenchConfig::validate() const {
  if (values.empty()) throw ArgumentError("sweep values must not be empty");
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (!(values[k] > values[k - 1])) {
      throw ArgumentError("sweep values must be strictly increasing");
    }
  }
  if (repetitions < 1) throw ArgumentError("repetitions must be at least 1");
  if (warmup < 0) throw ArgumentError("warmup must be non-negative");
  if (kinds.empty()) throw ArgumentError("at least one expansion kind is required");
  if (algorithms.empty()) throw ArgumentError("at least one algorithm is required");
  if (fixed_n_rows < 0 || fixed_n_cols < 0) {
    throw ArgumentError("fixed dimensions must be non-negative");
  }
  if (!(fixed_density >= 0.0 && fixed_density <= 1.0)) {
    throw ArgumentError("fixed density must lie in [0, 1]");
  }
  for (std::size_t k = 0; k < values.size(); ++k) grid_point(*this, k);
}

GridPoint grid_point(const BenchConfig& config, std::size_t index) {
  GridPoint p{config.fixed_n_rows, config.fixed_n_cols, config.fixed_density};
  const double v = config.values.at(index);
  switch (config.vary) {
    case Vary::Density:
      if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("density values must lie in [0, 1]");
      p.density = v;
      break;
    case Vary::Dimension:
      p.n_cols = integral_value(v, "dimension");
      break;
    case Vary::Rows:
      p.n_rows = integral_value(v, "row count");
      break;
  }
  return p;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t rep) noexcept {
  // splitmix64 finalizer over a combination of the three inputs.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (point * 0x100000001b3ULL + rep + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

BenchResult run_bench(const BenchConfig& config) {
  config.validate();
  if (config.retain_freed_memory) retain_freed_memory();
  BenchResult result;

  for (std::size_t pi = 0; pi < config.values.size(); ++pi) {
    const GridPoint pt = grid_point(config, pi);

    // Dense feasibility is a property of the point, not of the repetition.
    std::vector<bool> dense_ok(config.kinds.size(), false);
    bool want_dense = false;
    for (std::size_t ki = 0; ki < config.kinds.size(); ++ki) {
      const ExpansionSpec spec{config.kinds[ki]};
      const index_t width = expanded_width(pt.n_cols, spec);
      const long double bytes = (static_cast<long double>(pt.n_rows) * pt.n_cols +
                                 static_cast<long double>(pt.n_rows) * width) *
                                sizeof(double);
      for (Algorithm alg : config.algorithms) {
        if (alg != Algorithm::Dense) continue;
        if (bytes > static_cast<long double>(config.dense_memory_cap_bytes)) {
          std::ostringstream why;
          why << "dense input+output needs " << static_cast<double>(bytes)
              << " bytes, cap is " << config.dense_memory_cap_bytes;
          result.skipped.push_back({alg, config.kinds[ki], pt, why.str()});
        } else {
          dense_ok[ki] = true;
          want_dense = true;
        }
      }
    }

    for (int rep = 0; rep < config.repetitions; ++rep) {
      const CsrMatrix input =
          random_csr(pt.n_rows, pt.n_cols, pt.density, derive_seed(config.seed, pi, rep));
      DenseMatrix dense_input;
      if (want_dense) dense_input = to_dense(input);

      for (std::size_t ki = 0; ki < config.kinds.size(); ++ki) {
        const MappingKind kind = config.kinds[ki];
        const ExpansionSpec spec{kind};
        for (Algorithm alg : config.algorithms) {
          BenchRecord rec{alg,        kind.degree(), kind.mode(), pt.n_rows, pt.n_cols,
                          pt.density, rep,           0.0,         input.nnz(), 0, 0};
          if (alg == Algorithm::Sparse) {
            for (int w = 0; w < config.warmup; ++w) (void)expand(input, spec);
            const auto start = Clock::now();
            const CsrMatrix out = expand(input, spec);
            rec.wall_seconds = seconds_since(start);
            rec.nnz_out = out.nnz();
            rec.product_count = out.nnz();
          } else {
            if (!dense_ok[ki]) continue;
            for (int w = 0; w < config.warmup; ++w) (void)expand_dense(dense_input, spec);
            const auto start = Clock::now();
            const DenseMatrix out = expand_dense(dense_input, spec);
            rec.wall_seconds = seconds_since(start);
            rec.nnz_out = count_nonzero(out);
            rec.product_count = checked::mul(out.rows(), out.cols());
          }
          result.records.push_back(rec);
        }
      }
    }
  }
  return result;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("x and y differ in length");
  if (x.size() < 3) throw ArgumentError("slope fit needs at least three points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
      throw ArgumentError("log-log fit needs strictly positive values");
    }
    lx.push_back(std::log(x[k]));
    ly.push_back(std::log(y[k]));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (sxx == 0.0) throw ArgumentError("x values must not all be equal");
  return sxy / sxx;
}

MeanSeries mean_series(std::span<const BenchRecord> records, Algorithm algorithm,
                       MappingKind kind, Vary vary) {
  std::map<double, std::pair<double, int>> acc;
  for (const auto& r : records) {
    if (r.algorithm != algorithm || r.degree != kind.degree() || r.mode != kind.mode()) continue;
    double x = r.density;
    if (vary == Vary::Dimension) x = static_cast<double>(r.n_cols);
    if (vary == Vary::Rows) x = static_cast<double>(r.n_rows);
    auto& [sum, count] = acc[x];
    sum += r.wall_seconds;
    ++count;
  }
  MeanSeries s;
  for (const auto& [x, sc] : acc) {
    s.x.push_back(x);
    s.mean_seconds.push_back(sc.first / sc.second);
  }
  return s;
}

void write_csv(std::span<const BenchRecord> records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << to_string(r.algorithm) << ',' << r.degree << ',' << to_string(r.mode) << ','
        << r.n_rows << ',' << r.n_cols << ',' << format_double(r.density) << ',' << r.rep << ','
        << format_double(r.wall_seconds) << ',' << r.nnz_in << ',' << r.nnz_out << ','
        << r.product_count << '\n';
  }
}

void write_csv(std::span<const BenchRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_csv(records, out);
  if (!out) throw Error("write to " + path.string() + " failed");
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("missing CSV header");
  std::vector<BenchRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    for (;;) {
      auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    auto fail = [&] { return ParseError("malformed CSV record at line " + std::to_string(line_no)); };
    if (f.size() != 11) throw fail();
    BenchRecord r{};
    try {
      r.algorithm = parse_algorithm(f[0]);
      r.mode = parse_mode(f[2]);
    } catch (const ArgumentError&) {
      throw fail();
    }
    if (!parse_int(f[1], r.degree) || !parse_int(f[3], r.n_rows) ||
        !parse_int(f[4], r.n_cols) || !parse_double(f[5], r.density) ||
        !parse_int(f[6], r.rep) || !parse_double(f[7], r.wall_seconds) ||
        !parse_int(f[8], r.nnz_in) || !parse_int(f[9], r.nnz_out) ||
        !parse_int(f[10], r.product_count)) {
      throw fail();
    }
    records.push_back(r);
  }
  return records;
}

std::vector<BenchRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace csrpoly
