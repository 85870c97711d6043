#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>

#include <CLI11.hpp>

#include "likemind/server.hpp"
#include "likemind/simulator.hpp"
#include "likemind/synthetic.hpp"

using namespace likemind;

namespace {

struct DataSource {
  std::string snapshot;
  bool synthetic = false;
  SyntheticConfig city;
  std::string aliases;

  void add_to(CLI::App* app, bool allow_synthetic = true) {
    app->add_option("--dataset", snapshot, "Binary dataset snapshot written by ingest");
    if (allow_synthetic) {
      app->add_flag("--synthetic", synthetic, "Use the generated test city instead of a snapshot");
      app->add_option("--synthetic-seed", city.seed, "Seed of the generated city");
    }
    app->add_option("--aliases", aliases, "Category alias table (JSON)");
  }

  Dataset load() const {
    if (!snapshot.empty()) return Dataset::restore_file(snapshot);
    if (synthetic) return load_synthetic(city);
    throw ArgumentError("either --dataset or --synthetic is required");
  }

  CategoryAliases load_aliases() const {
    if (!aliases.empty()) return CategoryAliases::from_file(aliases);
#ifdef LIKEMIND_DATA_DIR
    const std::string fallback = std::string(LIKEMIND_DATA_DIR) + "/category_aliases.json";
    if (std::filesystem::exists(fallback)) return CategoryAliases::from_file(fallback);
#endif
    return {};
  }
};

void print_warnings(const Dataset& ds) {
  for (const auto& w : ds.warnings()) std::cerr << "warning: " << w << '\n';
}

int run_ingest(const std::string& pois, const std::string& users, const std::string& checkins,
               const std::string& out, const LoadConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const Dataset ds = Dataset::load_files(pois, users, checkins, config);
  print_warnings(ds);
  ds.save_file(out);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%zu POIs, %zu visitors, %zu check-ins, %zu categories, %zu warnings -> %s (%.0f ms)\n",
              ds.pois().size(), ds.visitors().size(), ds.checkins().size(), ds.category_count(),
              ds.warnings().size(), out.c_str(), ms);
  return 0;
}

int run_simulate(const DataSource& source, SimulationConfig config, const std::vector<std::string>& baselines,
                 const std::string& out_path) {
  config.validate();
  const Dataset ds = source.load();
  const Engine engine(ds, source.load_aliases());

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw Error("cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  write_csv_header(out);

  const auto traces = simulate(engine, config);
  write_csv_rows(out, hr_curve(traces, config.iterations), config, "likemind");
  for (const auto& b : baselines) {
    const BaselineKind kind = parse_baseline(b);
    const auto bt = simulate_baseline(engine, config, kind);
    write_csv_rows(out, hr_curve(bt, config.iterations), config, to_string(kind));
  }
  return 0;
}

int run_serve(const DataSource& source, ServerConfig config, const std::string& bind, const std::string& record) {
  if (!bind.empty()) config.set_bind(bind);
  Dataset ds;
  try {
    ds = source.load();
  } catch (const std::exception& e) {
    std::cerr << "cannot load dataset: " << e.what() << '\n';
    return 3;
  }
  print_warnings(ds);
  Service service(ds, source.load_aliases(), std::move(config));
  std::cerr << "listening on " << service.config().host << ':' << service.config().port << " ("
            << ds.pois().size() << " POIs)\n";
  run_http_server(service, record);
  return 0;
}

int run_replay(const DataSource& source, ServerConfig config, const std::string& log_path) {
  config.deterministic = true;
  const Dataset ds = source.load();
  Service service(ds, source.load_aliases(), std::move(config));
  std::ifstream log(log_path);
  if (!log) throw Error("cannot open " + log_path);
  for (const auto& line : replay(service, log)) std::cout << line << '\n';
  return 0;
}

int run_synth(const SyntheticConfig& city, const std::string& dir, const std::string& snapshot) {
  const SyntheticCity generated = generate_city(city);
  if (!dir.empty()) write_city(generated, dir);
  if (!snapshot.empty()) {
    const Dataset ds = load_synthetic(city);
    ds.save_file(snapshot);
  }
  if (dir.empty() && snapshot.empty()) throw ArgumentError("nothing to do: give --out and/or --snapshot");
  return 0;
}

int run_bench(const DataSource& source, std::size_t iterations, double r, const std::vector<std::size_t>& ks,
              std::uint64_t seed) {
  const Dataset ds = source.load();
  const Engine engine(ds, source.load_aliases());
  std::printf("k,iterations,nearby_ms,checkins_ms,mining_ms,maximize_ms,total_ms\n");
  for (std::size_t k : ks) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick_checkin(0, ds.checkins().size() - 1);
    const auto& builtins = builtin_mindsets();
    std::uniform_int_distribution<std::size_t> pick_mindset(0, builtins.size() - 1);
    EngineParams params;
    params.r = r;
    params.k = k;
    params.budget = Budget::exhaustive();
    StageTimings sum;
    for (std::size_t i = 0; i < iterations; ++i) {
      const Checkin& c = ds.checkins()[pick_checkin(rng)];
      Session s = engine.open_session("bench", Context::at(ds.poi(c.poi).loc, c.ts));
      const auto rec = engine.iterate(s, builtins[pick_mindset(rng)], params);
      sum.nearby_ms += rec.timings.nearby_ms;
      sum.checkins_ms += rec.timings.checkins_ms;
      sum.mining_ms += rec.timings.mining_ms;
      sum.maximize_ms += rec.timings.maximize_ms;
    }
    const double n = static_cast<double>(iterations);
    std::printf("%zu,%zu,%.3f,%.3f,%.3f,%.3f,%.3f\n", k, iterations, sum.nearby_ms / n, sum.checkins_ms / n,
                sum.mining_ms / n, sum.maximize_ms / n, sum.total_ms() / n);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LikeMind point-of-interest recommender"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Load JSON-lines files and write a binary snapshot");
  std::string pois, users, checkins, out;
  LoadConfig load;
  ingest->add_option("--pois", pois, "POIs (JSON lines)")->required();
  ingest->add_option("--users", users, "Visitors (JSON lines)")->required();
  ingest->add_option("--checkins", checkins, "Check-ins (JSON lines)")->required();
  ingest->add_option("--out", out, "Snapshot path")->required();
  ingest->add_flag("--strict", load.strict, "Fail on the first malformed record");
  ingest->add_flag("--refit-buckets", load.refit_buckets, "Equal-frequency demographic buckets");
  ingest->add_option("--utc-offset", load.utc_offset_minutes, "City UTC offset in minutes");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run the cold-start simulation and write HR curves as CSV");
  DataSource sim_source;
  sim_source.add_to(sim);
  SimulationConfig sim_config;
  std::string group_strategy = "random", mindset_strategy = "random", sim_out;
  std::vector<std::string> baselines;
  std::size_t max_len = sim_config.engine.mining.max_itemset_len;
  sim->add_option("--sessions", sim_config.sessions)->capture_default_str();
  sim->add_option("--iterations", sim_config.iterations)->capture_default_str();
  sim->add_option("--group-strategy", group_strategy)->check(CLI::IsMember({"random", "optimal"}))->capture_default_str();
  sim->add_option("--mindset-strategy", mindset_strategy)
      ->check(CLI::IsMember({"random", "optimal"}))
      ->capture_default_str();
  sim->add_option("--theta", sim_config.theta)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sim->add_option("--r", sim_config.r)->capture_default_str();
  sim->add_option("--seed", sim_config.seed)->capture_default_str();
  sim->add_option("--threads", sim_config.threads, "Worker threads (0 = all cores)")->capture_default_str();
  sim->add_option("--max-itemset-len", max_len)->capture_default_str();
  sim->add_option("--baseline", baselines, "Also emit rows for popularity and/or diversity")
      ->check(CLI::IsMember({"popularity", "diversity"}));
  sim->add_option("--out", sim_out, "CSV path (stdout when omitted)");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  DataSource serve_source;
  serve_source.add_to(serve, false);
  serve->get_option("--dataset")->envname("LIKEMIND_DATASET")->required();
  ServerConfig server;
  std::string bind, record;
  double time_limit_ms = 100.0;
  std::int64_t ttl_s = server.session_ttl.count();
  serve->add_option("--bind", bind, "host:port")->envname("LIKEMIND_BIND");
  serve->add_option("--r", server.defaults.r)->capture_default_str();
  serve->add_option("--k", server.defaults.k)->capture_default_str();
  serve->add_option("--k-prime", server.defaults.k_prime)->capture_default_str();
  serve->add_option("--sigma", server.defaults.sigma)->capture_default_str();
  serve->add_option("--time-limit-ms", time_limit_ms)->capture_default_str();
  serve->add_option("--ttl", ttl_s, "Session idle timeout in seconds")->capture_default_str();
  serve->add_option("--cors", server.cors_origins, "Allowed origin (repeatable, * for any)");
  serve->add_flag("--deterministic", server.deterministic, "Seeded ids, swap-count budget, logical clock");
  serve->add_option("--seed", server.seed)->capture_default_str();
  serve->add_option("--swaps", server.deterministic_swaps, "Swap budget in deterministic mode")->capture_default_str();
  serve->add_option("--record", record, "Append every request to this JSON-lines log");

  // replay
  auto* rep = app.add_subcommand("replay", "Feed a recorded request log through a deterministic service");
  DataSource replay_source;
  replay_source.add_to(rep);
  ServerConfig replay_config;
  std::string log_path;
  rep->add_option("--log", log_path)->required();
  rep->add_option("--seed", replay_config.seed)->capture_default_str();
  rep->add_option("--swaps", replay_config.deterministic_swaps)->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate the synthetic test city");
  SyntheticConfig city;
  std::string synth_dir, synth_snapshot;
  synth->add_option("--out", synth_dir, "Directory for pois/users/checkins.jsonl");
  synth->add_option("--snapshot", synth_snapshot, "Also write a binary snapshot");
  synth->add_option("--pois", city.pois)->capture_default_str();
  synth->add_option("--visitors", city.visitors)->capture_default_str();
  synth->add_option("--checkins", city.checkins)->capture_default_str();
  synth->add_option("--seed", city.seed)->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Per-stage iterate timings");
  DataSource bench_source;
  bench_source.add_to(bench);
  std::size_t bench_iterations = 100;
  double bench_r = 500.0;
  std::vector<std::size_t> ks{5};
  std::uint64_t bench_seed = 1;
  bench->add_option("--iterations", bench_iterations)->capture_default_str();
  bench->add_option("--r", bench_r)->capture_default_str();
  bench->add_option("--k", ks, "Values of k (repeatable)");
  bench->add_option("--seed", bench_seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return run_ingest(pois, users, checkins, out, load);
    if (*sim) {
      sim_config.group_strategy = parse_strategy(group_strategy);
      sim_config.mindset_strategy = parse_strategy(mindset_strategy);
      sim_config.engine.mining.max_itemset_len = max_len;
      return run_simulate(sim_source, sim_config, baselines, sim_out);
    }
    if (*serve) {
      server.defaults.budget = Budget::wall_clock(
          std::chrono::microseconds(static_cast<std::int64_t>(time_limit_ms * 1000.0)));
      server.session_ttl = std::chrono::seconds(ttl_s);
      return run_serve(serve_source, server, bind, record);
    }
    if (*rep) return run_replay(replay_source, replay_config, log_path);
    if (*synth) return run_synth(city, synth_dir, synth_snapshot);
    if (*bench) return run_bench(bench_source, bench_iterations, bench_r, ks, bench_seed);
  } catch (const IngestError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
