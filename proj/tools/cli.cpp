#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>

#include "csrpoly/bench.hpp"
#include "csrpoly/expansion.hpp"
#include "csrpoly/format.hpp"
#include "csrpoly/matrix_market.hpp"

namespace csrpoly::cli {

namespace {

/// Bad flag contents detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty element in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& text) {
  std::vector<T> out;
  for (const auto& item : split_list(text)) {
    T v{};
    bool ok = false;
    if constexpr (std::is_floating_point_v<T>) {
      ok = parse_double(item, v);
    } else {
      ok = parse_int(item, v);
    }
    if (!ok) throw UsageError("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

struct MapArgs {
  int degree = 2;
  std::string mode;
  index_t dim = 0;
  std::string tuple;
  std::optional<index_t> invert;
};

struct ExpandArgs {
  std::string input;
  std::string output = "-";
  int degree = 2;
  std::string mode;
  bool lower = false;
  bool bias = false;
  unsigned threads = 1;
};

struct VerifyArgs {
  index_t max_dim = 12;
  int trials = 25;
  std::uint64_t seed = 0;
};

struct BenchArgs {
  std::string vary = "density";
  std::string values;
  index_t rows = 100;
  index_t cols = 500;
  double density = 0.1;
  std::string degrees = "2";
  std::string modes = "poly";
  std::string algorithms = "sparse,dense";
  int reps = 20;
  std::uint64_t seed = 0;
  int warmup = 0;
  std::size_t mem_cap_mib = kDefaultDenseMemoryCap >> 20;
  std::string out = "-";
};

int do_map(const MapArgs& a, std::ostream& out) {
  const MappingKind kind(a.degree, parse_mode(a.mode));
  if (a.invert) {
    out << to_string(invert_map(*a.invert, a.dim, kind)) << '\n';
    return kOk;
  }
  if (a.tuple.empty()) throw UsageError("map needs --tuple or --invert");
  const auto idx = parse_numbers<index_t>(a.tuple);
  if (idx.size() != static_cast<std::size_t>(a.degree)) {
    throw UsageError("--tuple needs exactly " + std::to_string(a.degree) + " indices");
  }
  out << forward_map(FeatureTuple(std::span<const index_t>(idx)), a.dim, kind) << '\n';
  return kOk;
}

int do_expand(const ExpandArgs& a, std::ostream& out) {
  ExpansionSpec spec{MappingKind(a.degree, parse_mode(a.mode))};
  spec.include_lower_degrees = a.lower || a.bias;
  spec.include_bias = a.bias;

  const CsrMatrix input =
      a.input == "-" ? read_matrix_market(std::cin) : read_matrix_market(a.input);
  const CsrMatrix result = expand(input, spec, {a.threads});
  if (a.output == "-") {
    write_matrix_market(result, out);
  } else {
    write_matrix_market(result, std::filesystem::path(a.output));
  }
  return kOk;
}

int do_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  const VerifyReport report =
      run_verify({a.max_dim, a.trials, a.seed}, hooks.verify_forward_map);
  out << "passed " << report.passed << " failed " << report.failed << '\n';
  for (const auto& f : report.failures) err << "FAIL: " << f << '\n';
  return report.ok() ? kOk : kDataError;
}

int do_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  cfg.vary = parse_vary(a.vary);
  cfg.values = parse_numbers<double>(a.values);
  cfg.fixed_n_rows = a.rows;
  cfg.fixed_n_cols = a.cols;
  cfg.fixed_density = a.density;
  for (int degree : parse_numbers<int>(a.degrees)) {
    for (const auto& mode : split_list(a.modes)) cfg.kinds.emplace_back(degree, parse_mode(mode));
  }
  cfg.algorithms.clear();
  for (const auto& alg : split_list(a.algorithms)) cfg.algorithms.push_back(parse_algorithm(alg));
  cfg.repetitions = a.reps;
  cfg.seed = a.seed;
  cfg.warmup = a.warmup;
  cfg.dense_memory_cap_bytes = a.mem_cap_mib << 20;
  cfg.validate();

  const BenchResult result = run_bench(cfg);
  if (a.out == "-") {
    write_csv(result.records, out);
  } else {
    write_csv(result.records, std::filesystem::path(a.out));
  }

  for (const auto& s : result.skipped) {
    err << "skipped " << to_string(s.algorithm) << ' ' << to_string(s.kind) << " at N="
        << s.point.n_rows << " D=" << s.point.n_cols << " d=" << s.point.density << ": "
        << s.reason << '\n';
  }
  if (cfg.values.size() >= 3) {
    for (const auto& kind : cfg.kinds) {
      for (Algorithm alg : cfg.algorithms) {
        const auto series = mean_series(result.records, alg, kind, cfg.vary);
        if (series.x.size() < 3) continue;
        try {
          err << "slope " << to_string(alg) << ' ' << to_string(kind) << " vs "
              << to_string(cfg.vary) << ": "
              << fit_loglog_slope(series.x, series.mean_seconds) << '\n';
        } catch (const ArgumentError& e) {
          err << "slope " << to_string(alg) << ' ' << to_string(kind) << ": " << e.what() << '\n';
        }
      }
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks) {
  CLI::App app{"Polynomial and interaction feature expansion of CSR matrices", "csrpoly"};
  app.require_subcommand(1);

  const std::vector<int> degrees{2, 3};
  const std::vector<std::string> modes{"poly", "inter"};

  MapArgs map_args;
  auto* map = app.add_subcommand(
      "map", "Map a 0-based column tuple to its expanded column, or invert a column");
  map->add_option("--degree", map_args.degree, "Expansion degree")
      ->required()
      ->check(CLI::IsMember(degrees));
  map->add_option("--mode", map_args.mode, "poly or inter")->required()->check(CLI::IsMember(modes));
  map->add_option("--dim", map_args.dim, "Input dimension D")->required()->check(CLI::NonNegativeNumber);
  auto* tuple_opt = map->add_option("--tuple", map_args.tuple, "Comma separated 0-based indices");
  auto* invert_opt = map->add_option("--invert", map_args.invert, "0-based expanded column");
  tuple_opt->excludes(invert_opt);

  ExpandArgs expand_args;
  auto* exp = app.add_subcommand("expand", "Expand a Matrix Market file");
  exp->add_option("-i,--input", expand_args.input, "Input .mtx file, '-' for stdin")->required();
  exp->add_option("-o,--output", expand_args.output, "Output .mtx file, '-' for stdout");
  exp->add_option("--degree", expand_args.degree, "Expansion degree")
      ->required()
      ->check(CLI::IsMember(degrees));
  exp->add_option("--mode", expand_args.mode, "poly or inter")->required()->check(CLI::IsMember(modes));
  exp->add_flag("--lower", expand_args.lower, "Prepend all lower-degree blocks");
  exp->add_flag("--bias", expand_args.bias, "Prepend a constant 1 column (implies --lower)");
  exp->add_option("--threads", expand_args.threads, "Fill-pass worker threads")
      ->check(CLI::PositiveNumber);

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Exhaustive mapping checks and sparse/dense agreement");
  ver->add_option("--max-dim", verify_args.max_dim, "Largest dimension checked exhaustively")
      ->check(CLI::Range(index_t{2}, index_t{4096}));
  ver->add_option("--trials", verify_args.trials, "Random oracle comparisons")
      ->check(CLI::NonNegativeNumber);
  ver->add_option("--seed", verify_args.seed, "Random seed");

  BenchArgs bench_args;
  auto* ben = app.add_subcommand("bench", "Scaling study of sparse vs dense expansion (CSV)");
  ben->add_option("--vary", bench_args.vary, "density, dim or rows")
      ->check(CLI::IsMember({"density", "dim", "rows"}));
  ben->add_option("--values", bench_args.values, "Comma separated sweep values")->required();
  ben->add_option("--rows", bench_args.rows, "Fixed row count N");
  ben->add_option("--cols", bench_args.cols, "Fixed dimension D");
  ben->add_option("--density", bench_args.density, "Fixed density d");
  ben->add_option("--degree", bench_args.degrees, "Degrees, e.g. 2,3");
  ben->add_option("--mode", bench_args.modes, "Modes, e.g. poly,inter");
  ben->add_option("--algorithms", bench_args.algorithms, "sparse,dense");
  ben->add_option("--reps", bench_args.reps, "Repetitions per point")->check(CLI::PositiveNumber);
  ben->add_option("--seed", bench_args.seed, "Base seed");
  ben->add_option("--warmup", bench_args.warmup, "Untimed runs before each timed run");
  ben->add_option("--mem-cap-mib", bench_args.mem_cap_mib, "Dense memory cap in MiB");
  ben->add_option("--out", bench_args.out, "CSV output path, '-' for stdout");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*map) return do_map(map_args, out);
    if (*exp) return do_expand(expand_args, out);
    if (*ver) return do_verify(verify_args, out, err, hooks);
    if (*ben) return do_bench(bench_args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kCapacityError;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace csrpoly::cli
