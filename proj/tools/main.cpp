// sealbid command-line runner: protocol simulation, IC sweeps, revenue
// tables, and the forced-decryption benchmark.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sealbid/fixtures.hpp"
#include "sealbid/incentives.hpp"
#include "sealbid/protocol.hpp"

using namespace sealbid;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out;
  bool test_profile = false;
  std::string config_path;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("config file not found: " + path);
  json j;
  in >> j;
  return j;
}

/// Flags override the config file: apply a config value only when the
/// option was not given on the command line.
template <typename T>
void config_default(const CLI::App& app, const std::string& flag, const json& cfg,
                    const std::string& key, T& value) {
  const CLI::Option* opt = app.get_option(flag);
  if (opt != nullptr && opt->count() > 0) return;
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(Rational::parse(item));
  }
  return out;
}

ValueDomain make_domain(std::size_t grid, const std::string& ticks_csv,
                        const std::string& domain_file) {
  if (!domain_file.empty()) {
    std::ifstream in(domain_file);
    if (!in) throw ConfigInvalid("domain file not found: " + domain_file);
    json j;
    in >> j;
    return domain_from_json(j);
  }
  if (!ticks_csv.empty()) return ValueDomain(parse_rational_list(ticks_csv));
  return ValueDomain::grid(grid);
}

DiscreteDistribution make_distribution(const ValueDomain& domain, const std::string& dist,
                                       const std::string& pmf_csv) {
  if (!pmf_csv.empty()) return DiscreteDistribution(domain, parse_rational_list(pmf_csv));
  if (dist == "uniform") return DiscreteDistribution::uniform(domain);
  if (dist.rfind("geometric:", 0) == 0)
    return DiscreteDistribution::geometric(domain, Rational::parse(dist.substr(10)));
  throw ConfigInvalid("unknown distribution '" + dist + "'");
}

std::shared_ptr<const AuctionRules> make_rules(const std::string& mechanism,
                                               const ValueDomain& domain,
                                               const Rational& reserve_price, std::size_t k,
                                               const DiscreteDistribution* dist) {
  if (mechanism == "second-price")
    return std::make_shared<SecondPriceRules>(domain, reserve_price, k);
  if (mechanism == "ascending") {
    if (dist == nullptr) throw ConfigInvalid("ascending mechanism needs a distribution");
    return std::make_shared<AscendingRules>(*dist, k);
  }
  if (mechanism == "broken-first-price")
    return std::make_shared<BrokenFirstPriceRules>(domain, reserve_price, k);
  if (mechanism == "tick-skimming")
    return std::make_shared<TickSkimmingRules>(domain, reserve_price, k);
  throw ConfigInvalid("unknown mechanism '" + mechanism + "'");
}

AdversaryScript make_adversary(const std::string& name, const BidVector& honest,
                               const ValueDomain& domain) {
  if (name.empty() || name == "none") return AdversaryScript::none();
  if (honest.empty()) throw ConfigInvalid("adversary scripts need at least one buyer");
  const Identity first = honest.entries().front().id;
  std::uint64_t fresh = 1000;
  for (const auto& b : honest.entries()) fresh = std::max(fresh, b.id.value + 1000);
  if (name == "withhold-opening") return AdversaryScript::withhold_opening(first);
  if (name == "garbage-commitment") return AdversaryScript::garbage_commitment(first);
  if (name == "fake-bids")
    return AdversaryScript::fake_bid_injection(first, {{Identity{fresh}, domain.top()}});
  if (name == "seller-shill")
    return AdversaryScript::seller_shill({{Identity{fresh}, domain.top()}});
  if (name == "duplicate-identity") return AdversaryScript::duplicate_identity(first);
  if (name == "digest-equivocation") return AdversaryScript::digest_equivocation(first);
  if (name == "mutate-outcome") return AdversaryScript::outcome_mutation(first);
  if (name == "drop-honest-tuple") return AdversaryScript::dropped_honest_tuple(first);
  throw ConfigInvalid("unknown adversary '" + name + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

// ---------------------------------------------------------------------------

int cmd_run(const GlobalOpts& g, const json& cfg, CLI::App& app, std::string mechanism,
            std::string bids_csv, std::size_t k, std::string reserve_str, std::size_t grid,
            std::string ticks_csv, std::string domain_file, std::string dist_name,
            std::string pmf_csv, std::string adversary, std::size_t kappa,
            std::size_t lambda_bits, std::size_t nitc_bits, std::uint64_t difficulty,
            bool full_payloads) {
  config_default(app, "--mechanism", cfg, "mechanism", mechanism);
  config_default(app, "--bids", cfg, "bids", bids_csv);
  config_default(app, "--k", cfg, "k", k);
  config_default(app, "--reserve", cfg, "reserve", reserve_str);
  config_default(app, "--grid", cfg, "grid", grid);
  config_default(app, "--adversary", cfg, "adversary", adversary);

  ValueDomain domain = make_domain(grid, ticks_csv, domain_file);
  std::optional<DiscreteDistribution> dist;
  if (!pmf_csv.empty() || mechanism == "ascending")
    dist = make_distribution(domain, dist_name, pmf_csv);

  Rational reserve_price =
      !reserve_str.empty() ? Rational::parse(reserve_str)
                           : (dist ? reserve(*dist) : throw ConfigInvalid("need --reserve or a distribution"));

  std::vector<Bid> bids;
  std::uint64_t next_id = 1;
  for (const auto& v : parse_rational_list(bids_csv)) bids.push_back({Identity{next_id++}, v});
  BidVector honest(bids);

  auto rules = make_rules(mechanism, domain, reserve_price, k, dist ? &*dist : nullptr);

  ProtocolConfig proto;
  proto.rules = rules;
  proto.lambda_bits = lambda_bits;
  proto.kappa = kappa;
  proto.seed = g.seed;
  {
    Rng rng(g.seed ^ 0x5ea1b1d);
    proto.nitc = crypto::nitc_gen(g.test_profile ? 512 : nitc_bits, difficulty, rng);
  }

  ExecutionTrace trace = run_protocol(proto, honest, make_adversary(adversary, honest, domain));

  json summary;
  summary["mechanism"] = rules->name();
  summary["adversary"] = adversary.empty() ? "none" : adversary;
  summary["seed"] = g.seed;
  summary["safe"] = trace.safe;
  summary["outcome"] = outcome_to_json(trace.outcome);
  summary["decisions"] = json::object();
  for (const auto& [who, accepted] : trace.decisions)
    summary["decisions"][who.label()] = accepted;

  const std::string out_dir = g.out.empty() ? "sealbid-run" : g.out;
  write_file(out_dir + "/trace.jsonl", trace_to_jsonl(trace, full_payloads));
  write_file(out_dir + "/summary.json", summary.dump(2) + "\n");

  std::cout << "safe: " << (trace.safe ? "true" : "false") << "\n";
  std::cout << "items sold: " << trace.outcome.items_sold << "\n";
  std::cout << "seller revenue: " << trace.outcome.seller_revenue.str() << "\n";
  for (const auto& [id, p] : trace.outcome.payments)
    if (trace.outcome.allocation_of(id) == 1)
      std::cout << "winner " << id.value << " pays " << p.str() << "\n";
  std::cout << "trace: " << out_dir << "/trace.jsonl\n";
  return kExitOk;
}

int cmd_ic_sweep(const GlobalOpts& g, const json& cfg, CLI::App& app, std::string mechanism,
                 std::size_t grid, std::string ticks_csv, std::string domain_file,
                 std::string dist_name, std::string pmf_csv, std::size_t n, std::size_t k,
                 std::string mode, std::size_t samples) {
  config_default(app, "--mechanism", cfg, "mechanism", mechanism);
  config_default(app, "--grid", cfg, "grid", grid);
  config_default(app, "--n", cfg, "n", n);
  config_default(app, "--k", cfg, "k", k);
  config_default(app, "--mode", cfg, "mode", mode);

  ValueDomain domain = make_domain(grid, ticks_csv, domain_file);
  DiscreteDistribution dist = make_distribution(domain, dist_name, pmf_csv);
  auto rules = make_rules(mechanism, domain, reserve(dist), k, &dist);

  IcCheckOptions opts;
  opts.bayesian = true;
  opts.prior = &dist;
  opts.monte_carlo = mode == "mc";
  opts.mc_samples = samples;
  opts.seed = g.seed;

  std::vector<Bid> honest;
  for (std::uint64_t i = 1; i <= n; ++i) honest.push_back({Identity{i}, domain.tick_at(0)});
  BidVector all_honest(honest);
  BidVector rest(std::vector<Bid>(honest.begin() + 1, honest.end()));
  const std::uint64_t fresh = 10000;

  json report;
  report["mechanism"] = rules->name();
  report["mode"] = opts.monte_carlo ? "monte-carlo" : "exact";
  report["scripts"] = json::array();
  std::size_t violations = 0;

  auto run_one = [&](const std::string& coalition_name, const Coalition& coalition,
                     const StrategyScript& script, const BidVector& honest_side) {
    UtilityReport rep = evaluate_script(*rules, coalition, script, honest_side, opts);
    json entry;
    entry["coalition"] = coalition_name;
    entry["script"] = rep.script_label;
    entry["honest"] = rep.honest_expected.str();
    entry["deviating"] = rep.deviating_expected.str();
    entry["mode"] = rep.exact ? "exact" : "monte-carlo";
    if (!rep.exact) {
      entry["samples"] = rep.samples;
      entry["half_width"] = rep.half_width;
    }
    entry["violated"] = rep.violated;
    report["scripts"].push_back(entry);
    if (rep.violated) ++violations;
  };

  // single-buyer deviations for each true value, opponents drawn from the prior
  for (const auto& value : domain.ticks()) {
    auto buyer = Coalition::single_buyer(Identity{1}, value);
    for (const auto& script : buyer_script_suite(domain, Identity{1}, fresh))
      run_one("buyer(v=" + value.str() + ")", buyer, script, rest);
  }
  for (const auto& script : platform_script_suite(domain, fresh)) {
    run_one("platform", Coalition::platform_only(), script, all_honest);
    run_one("platform+seller", Coalition::platform_seller(), script, all_honest);
  }
  for (const auto& script : seller_script_suite(domain, fresh))
    run_one("seller", Coalition::seller_only(), script, all_honest);

  report["violations"] = violations;
  const std::string out_path = g.out.empty() ? "ic-report.json" : g.out;
  write_file(out_path, report.dump(2) + "\n");
  std::cout << "scripts: " << report["scripts"].size() << ", violations: " << violations
            << " -> " << out_path << "\n";
  return kExitOk;
}

int cmd_revenue(const GlobalOpts& g, const json& cfg, CLI::App& app, std::size_t grid,
                std::string ticks_csv, std::string domain_file, std::string dist_name,
                std::string pmf_csv, std::size_t n, std::size_t k) {
  config_default(app, "--grid", cfg, "grid", grid);
  config_default(app, "--n", cfg, "n", n);
  config_default(app, "--k", cfg, "k", k);

  ValueDomain domain = make_domain(grid, ticks_csv, domain_file);
  DiscreteDistribution dist = make_distribution(domain, dist_name, pmf_csv);
  RevenueComparison cmp = revenue_compare(dist, k, n);

  std::ostringstream csv;
  csv << "values,weight,ascending,second_price,optimal\n";
  for (const auto& row : cmp.rows) {
    std::string values;
    for (const auto& v : row.values) values += (values.empty() ? "" : ";") + v.str();
    csv << values << "," << row.weight.str() << "," << row.ascending_revenue.str() << ","
        << row.second_price_revenue.str() << "," << row.optimal_virtual_surplus.str() << "\n";
  }
  csv << "expected,1," << cmp.expected_ascending.str() << "," << cmp.expected_second_price.str()
      << "," << cmp.expected_optimal.str() << "\n";

  const std::string out_path = g.out.empty() ? "revenue.csv" : g.out;
  write_file(out_path, csv.str());
  std::cout << "E[ascending]=" << cmp.expected_ascending.str()
            << " E[second-price]=" << cmp.expected_second_price.str()
            << " E[optimal]=" << cmp.expected_optimal.str()
            << " max-gap=" << cmp.max_gap.str() << " bound=" << cmp.gap_bound.str() << "\n";
  std::cout << (cmp.second_price_is_optimal ? "second-price matches the optimal oracle\n"
                                            : "WARNING: second-price misses the optimal oracle\n");
  std::cout << (cmp.ascending_within_bound ? "ascending within k*tick of second-price\n"
                                           : "WARNING: ascending outside the k*tick bound\n");
  return kExitOk;
}

int cmd_bench_fdec(const GlobalOpts& g, std::string difficulties_csv, std::size_t reps,
                   std::size_t bits) {
  std::vector<std::uint64_t> difficulties;
  {
    std::stringstream ss(difficulties_csv);
    std::string item;
    while (std::getline(ss, item, ',')) difficulties.push_back(std::stoull(item));
  }
  if (difficulties.empty()) throw ConfigInvalid("bench-fdec: no difficulties given");

  Rng rng(g.seed);
  crypto::NitcCrs base = crypto::nitc_gen(g.test_profile ? 512 : bits, 1, rng);

  std::ostringstream table;
  table << "T,median_ms\n";
  std::vector<double> medians;
  for (std::uint64_t t : difficulties) {
    crypto::NitcCrs crs = crypto::nitc_with_difficulty(base, t);
    std::vector<double> times;
    for (std::size_t rep = 0; rep < reps; ++rep) {
      auto [cm, opening] = crypto::nitc_com(crs, rng.bytes(32), rng);
      auto start = std::chrono::steady_clock::now();
      crypto::ForcedOpening forced = crypto::nitc_fdec(crs, cm);
      auto stop = std::chrono::steady_clock::now();
      if (!crypto::nitc_fdecvf(crs, cm, forced.message, forced))
        throw Error("bench-fdec: forced opening failed to verify");
      times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    medians.push_back(median);
    table << t << "," << median << "\n";
    std::cout << "T=" << t << " median " << median << " ms\n";
  }
  if (medians.size() >= 2 && medians.front() > 0) {
    const double ratio = medians.back() / medians.front();
    table << "ratio," << ratio << "\n";
    std::cout << "wall-time ratio " << difficulties.back() << "/" << difficulties.front() << " = "
              << ratio << "\n";
  }
  if (!g.out.empty()) write_file(g.out, table.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"platform-assisted sealed-bid auctions: simulator and verification harness"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "root RNG seed (all randomness derives from it)");
  app.add_option("--out", g.out, "output path (directory or file, subcommand-dependent)");
  app.add_flag("--test-profile", g.test_profile,
               "CI parameters: 512-bit moduli (insecure, fast)");
  app.add_option("--config", g.config_path, "JSON config file; flags override its values");

  // run
  auto* run = app.add_subcommand("run", "simulate one protocol execution");
  run->fallthrough();
  std::string mechanism = "second-price", bids_csv, reserve_str, ticks_csv, domain_file;
  std::string dist_name = "uniform", pmf_csv, adversary;
  std::size_t k = 1, grid = 11, kappa = 64, lambda_bits = 128, nitc_bits = 2048;
  std::uint64_t difficulty = 4096;
  bool full_payloads = false;
  run->add_option("--mechanism", mechanism, "second-price | ascending");
  run->add_option("--bids", bids_csv, "honest values, e.g. 0.5,0.3");
  run->add_option("--k", k, "items for sale");
  run->add_option("--reserve", reserve_str, "reserve price (a tick)");
  run->add_option("--grid", grid, "evenly spaced domain with this many ticks");
  run->add_option("--ticks", ticks_csv, "explicit tick list");
  run->add_option("--domain", domain_file, "domain JSON file");
  run->add_option("--dist", dist_name, "uniform | geometric:<ratio>");
  run->add_option("--pmf", pmf_csv, "explicit pmf over the ticks");
  run->add_option("--adversary", adversary,
                  "withhold-opening | garbage-commitment | fake-bids | seller-shill | "
                  "duplicate-identity | digest-equivocation | mutate-outcome | drop-honest-tuple");
  run->add_option("--kappa", kappa, "retrievability challenge size");
  run->add_option("--lambda", lambda_bits, "coin length in bits");
  run->add_option("--nitc-bits", nitc_bits, "NITC modulus size");
  run->add_option("--T", difficulty, "NITC difficulty (sequential squarings)");
  run->add_flag("--full", full_payloads, "embed raw payloads in the trace");

  // ic-sweep
  auto* sweep = app.add_subcommand("ic-sweep", "incentive-compatibility falsification sweep");
  sweep->fallthrough();
  std::string s_mechanism = "second-price", s_ticks, s_domain_file, s_dist = "uniform", s_pmf;
  std::size_t s_grid = 5, s_n = 3, s_k = 1, s_samples = 20000;
  std::string s_mode = "exact";
  sweep->add_option("--mechanism", s_mechanism,
                    "second-price | ascending | broken-first-price | tick-skimming");
  sweep->add_option("--grid", s_grid, "evenly spaced domain size");
  sweep->add_option("--ticks", s_ticks, "explicit tick list");
  sweep->add_option("--domain", s_domain_file, "domain JSON file");
  sweep->add_option("--dist", s_dist, "uniform | geometric:<ratio>");
  sweep->add_option("--pmf", s_pmf, "explicit pmf");
  sweep->add_option("--n", s_n, "honest buyers");
  sweep->add_option("--k", s_k, "items");
  sweep->add_option("--mode", s_mode, "exact | mc");
  sweep->add_option("--samples", s_samples, "Monte Carlo samples");

  // revenue
  auto* revenue = app.add_subcommand("revenue", "revenue comparison table");
  revenue->fallthrough();
  std::string r_ticks, r_domain_file, r_dist = "uniform", r_pmf;
  std::size_t r_grid = 5, r_n = 2, r_k = 1;
  revenue->add_option("--grid", r_grid, "evenly spaced domain size");
  revenue->add_option("--ticks", r_ticks, "explicit tick list");
  revenue->add_option("--domain", r_domain_file, "domain JSON file");
  revenue->add_option("--dist", r_dist, "uniform | geometric:<ratio>");
  revenue->add_option("--pmf", r_pmf, "explicit pmf");
  revenue->add_option("--n", r_n, "buyers");
  revenue->add_option("--k", r_k, "items");

  // bench-fdec
  auto* bench = app.add_subcommand("bench-fdec", "forced-decryption sequentiality benchmark");
  bench->fallthrough();
  std::string b_difficulties = "1024,16384,262144";
  std::size_t b_reps = 5, b_bits = 2048;
  bench->add_option("--difficulties", b_difficulties, "comma-separated T values");
  bench->add_option("--reps", b_reps, "repetitions per T");
  bench->add_option("--bits", b_bits, "modulus size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const json cfg = load_config(g.config_path);
    if (run->parsed())
      return cmd_run(g, cfg, *run, mechanism, bids_csv, k, reserve_str, grid, ticks_csv,
                     domain_file, dist_name, pmf_csv, adversary, kappa, lambda_bits, nitc_bits,
                     difficulty, full_payloads);
    if (sweep->parsed())
      return cmd_ic_sweep(g, cfg, *sweep, s_mechanism, s_grid, s_ticks, s_domain_file, s_dist,
                          s_pmf, s_n, s_k, s_mode, s_samples);
    if (revenue->parsed())
      return cmd_revenue(g, cfg, *revenue, r_grid, r_ticks, r_domain_file, r_dist, r_pmf, r_n,
                         r_k);
    if (bench->parsed()) return cmd_bench_fdec(g, b_difficulties, b_reps, b_bits);
  } catch (const ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitConfig;
}
