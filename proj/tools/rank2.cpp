// Command-line front end: periodicity checks, aperiodicity certificates,
// gamma extraction, sub-2-graph induction, tail/window analysis, the
// catalog of named examples, and the benchmark harness. Every command
// emits a single JSON report (--json PATH, or '-' for stdout).

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rank2/catalog.hpp"
#include "rank2/endo.hpp"
#include "rank2/periodicity.hpp"
#include "rank2/report.hpp"
#include "rank2/tails.hpp"
#include "rank2/theta.hpp"

using namespace rank2;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class Timer {
 public:
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

struct CommonArgs {
  std::string theta_file;
  std::string catalog_name;
  std::string json_out;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string mode = "exhaustive";
};

void add_theta_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--theta-file", args.theta_file,
                  "theta description file (m/n/cycle grammar)");
  cmd->add_option("--catalog", args.catalog_name, "named catalog entry");
}

void add_run_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--json", args.json_out,
                  "write the JSON report here ('-' for stdout)");
  cmd->add_option("--mode", args.mode, "exhaustive|sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}));
  cmd->add_option("--samples", args.samples, "sample count for sampled mode");
  cmd->add_option("--seed", args.seed, "seed for sampled mode");
  cmd->add_option("--workers", args.workers,
                  "worker threads (0 = hardware concurrency)");
}

ThetaSpec resolve_theta(const CommonArgs& args) {
  if (args.theta_file.empty() == args.catalog_name.empty())
    throw UsageError("provide exactly one of --theta-file and --catalog");
  if (!args.theta_file.empty()) return ThetaSpec::load_file(args.theta_file);
  const CatalogEntry* entry = catalog_find(args.catalog_name);
  if (!entry)
    throw UsageError("unknown catalog entry '" + args.catalog_name + "'");
  return entry->build();
}

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
  std::istringstream is(text);
  int a, b;
  char comma;
  if (!(is >> a >> comma >> b) || comma != ',' || !(is >> std::ws).eof())
    throw UsageError(std::string(what) + ": expected 'a,b', got '" + text + "'");
  return {a, b};
}

std::vector<std::vector<int>> parse_word_list(const std::string& text,
                                              const char* what) {
  std::vector<std::vector<int>> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    std::vector<int> word;
    for (char c : item) {
      if (c < '1' || c > '9')
        throw UsageError(std::string(what) +
                         ": words are digit strings over 1..9");
      word.push_back(c - '0');
    }
    if (word.empty()) throw UsageError(std::string(what) + ": empty word");
    out.push_back(std::move(word));
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

std::vector<TailBlock> parse_blocks(const std::string& text) {
  std::vector<TailBlock> blocks;
  if (text.empty()) return blocks;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ';')) {
    auto [e, f] = parse_pair(item, "tail block");
    blocks.push_back(TailBlock{e, f});
  }
  return blocks;
}

void emit(const Report& report, const std::string& json_out) {
  if (json_out == "-") {
    std::cout << report.serialize() << '\n';
  } else if (!json_out.empty()) {
    std::ofstream out(json_out);
    if (!out) throw std::runtime_error("cannot write '" + json_out + "'");
    out << report.serialize() << '\n';
  }
}

CheckOptions make_check_options(const CommonArgs& args) {
  CheckOptions opts;
  opts.mode = args.mode == "sampled" ? CheckOptions::Mode::Sampled
                                     : CheckOptions::Mode::Exhaustive;
  opts.samples = args.samples;
  opts.seed = args.seed;
  opts.workers = args.workers;
  return opts;
}

int cmd_check(const CommonArgs& args, const std::string& period) {
  ThetaSpec theta = resolve_theta(args);
  auto [a, b] = parse_pair(period, "--period");
  PeriodCandidate cand = [&] {
    try {
      return PeriodCandidate::make(theta, a, b);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Timer timer;
  PeriodicityVerdict verdict = check_period(theta, cand, make_check_options(args));
  Report report("check", theta);
  report.set_verdict(verdict);
  report.set_elapsed_ms(timer.ms());
  std::cout << verdict.summary() << '\n';
  emit(report, args.json_out);
  return 0;
}

int cmd_minimal_period(const CommonArgs& args, int max_k) {
  ThetaSpec theta = resolve_theta(args);
  MinimalPeriodOptions opts;
  opts.samples = args.samples;
  opts.seed = args.seed;
  opts.workers = args.workers;
  Timer timer;
  PeriodicityVerdict verdict = minimal_period(theta, max_k, opts);
  Report report("minimal-period", theta);
  report.set_verdict(verdict);
  report.set_elapsed_ms(timer.ms());
  std::cout << verdict.summary() << '\n';
  emit(report, args.json_out);
  return 0;
}

int cmd_criterion(const CommonArgs& args) {
  ThetaSpec theta = resolve_theta(args);
  Timer timer;
  CoordinateMaps maps = extract_maps(theta);
  auto cert = find_certificate(theta);
  int alpha_bound = static_cast<int>(closure(maps.alphas).size()) + 1;
  int beta_bound = static_cast<int>(closure(maps.betas).size()) + 1;
  auto alpha_depth = constancy_depth(maps.alphas, alpha_bound);
  auto beta_depth = constancy_depth(maps.betas, beta_bound);
  Report report("criterion", theta);
  Json j;
  j["certificate"] = cert ? certificate_to_json(*cert) : Json(nullptr);
  j["constancy_depth_alpha"] = alpha_depth ? Json(*alpha_depth) : Json(nullptr);
  j["constancy_depth_beta"] = beta_depth ? Json(*beta_depth) : Json(nullptr);
  report.set("criterion", j);
  report.set_elapsed_ms(timer.ms());
  if (cert)
    std::cout << "aperiodic: fixed set of size " << cert->fixed_set.size()
              << " on the " << (cert->side == AperiodicityCertificate::Side::Alpha
                                    ? "alpha"
                                    : "beta")
              << " side\n";
  else
    std::cout << "no certificate; constancy depths: alpha="
              << (alpha_depth ? std::to_string(*alpha_depth) : "none")
              << " beta=" << (beta_depth ? std::to_string(*beta_depth) : "none")
              << '\n';
  emit(report, args.json_out);
  return 0;
}

int cmd_gamma(const CommonArgs& args, const std::string& period) {
  ThetaSpec theta = resolve_theta(args);
  auto [a, b] = parse_pair(period, "--period");
  PeriodCandidate cand = [&] {
    try {
      return PeriodCandidate::make(theta, a, b);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Timer timer;
  CheckOptions opts = make_check_options(args);
  opts.mode = CheckOptions::Mode::Exhaustive;
  PeriodicityVerdict verdict = check_period(theta, cand, opts);
  Report report("gamma", theta);
  report.set_verdict(verdict);
  if (verdict.tag == VerdictTag::Periodic) {
    ShiftCheckMode mode;
    mode.exhaustive = args.mode != "sampled";
    mode.samples = args.samples;
    mode.seed = args.seed;
    bool ok = gamma_shift_check(theta, *verdict.gamma, mode);
    report.set("shift_check", Json(ok));
    std::cout << "gamma with " << verdict.gamma->forward.size()
              << " entries; shift identity " << (ok ? "holds" : "FAILS")
              << '\n';
  } else {
    std::cout << verdict.summary() << '\n';
  }
  report.set_elapsed_ms(timer.ms());
  emit(report, args.json_out);
  return 0;
}

int cmd_oracle(const CommonArgs& args, const std::string& period,
               std::uint64_t limit) {
  ThetaSpec theta = resolve_theta(args);
  auto [a, b] = parse_pair(period, "--period");
  PeriodCandidate cand = [&] {
    try {
      return PeriodCandidate::make(theta, a, b);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Timer timer;
  PeriodicityVerdict verdict = brute_force_oracle(theta, cand, limit);
  Report report("oracle", theta);
  report.set_verdict(verdict);
  report.set_elapsed_ms(timer.ms());
  std::cout << verdict.summary() << '\n';
  emit(report, args.json_out);
  return 0;
}

int cmd_subgraph(const CommonArgs& args, int p, int q, const std::string& u,
                 const std::string& v) {
  ThetaSpec theta = resolve_theta(args);
  auto U = parse_word_list(u, "--u");
  auto V = parse_word_list(v, "--v");
  Timer timer;
  SubTwoGraphResult res = [&] {
    try {
      return sub_two_graph(theta, p, q, U, V);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Report report("subgraph", theta);
  if (res.induced) {
    Json j;
    j["m"] = res.induced->m();
    j["n"] = res.induced->n();
    j["digest"] = theta_digest(*res.induced);
    Json rel = Json::array();
    for (int i = 1; i <= res.induced->m(); ++i)
      for (int jj = 1; jj <= res.induced->n(); ++jj) {
        auto [ip, jp] = res.induced->forward(i, jj);
        rel.push_back(Json::array({i, jj, ip, jp}));
      }
    j["forward"] = std::move(rel);
    report.set("induced", j);
    std::cout << "closed: induced " << res.induced->m() << "x"
              << res.induced->n() << " relation set\n";
  } else {
    Json j;
    j["u"] = res.violation->first;
    j["v"] = res.violation->second;
    report.set("violation", j);
    std::cout << "not closed under the relations\n";
  }
  report.set_elapsed_ms(timer.ms());
  emit(report, args.json_out);
  return 0;
}

Tail resolve_tail(const ThetaSpec& theta, const std::string& tail,
                  const std::string& preperiod, const std::string& tail_file) {
  if (!tail_file.empty()) {
    std::ifstream in(tail_file);
    if (!in) throw UsageError("cannot open '" + tail_file + "'");
    Json doc = Json::parse(in);
    if (doc.contains("segments")) {
      std::vector<Word> segments;
      for (const auto& s : doc["segments"])
        segments.push_back(Word::parse(s.get<std::string>()));
      return Tail::generated_prefix(std::move(segments), "from " + tail_file);
    }
    auto parse = [](const Json& arr) {
      std::vector<TailBlock> blocks;
      for (const auto& b : arr) blocks.push_back({b.at(0), b.at(1)});
      return blocks;
    };
    return Tail::eventually_periodic(
        doc.contains("preperiod") ? parse(doc["preperiod"])
                                  : std::vector<TailBlock>{},
        parse(doc.at("period")));
  }
  if (tail.empty()) throw UsageError("provide --tail blocks or --tail-file");
  (void)theta;
  return Tail::eventually_periodic(parse_blocks(preperiod),
                                   parse_blocks(tail));
}

int cmd_tail_window(const CommonArgs& args, const std::string& tail,
                    const std::string& preperiod, const std::string& tail_file,
                    int window) {
  ThetaSpec theta = resolve_theta(args);
  Tail t = resolve_tail(theta, tail, preperiod, tail_file);
  Timer timer;
  LatticeWindow w = lattice_window(theta, t, window);
  Report report("tail window", theta);
  report.set("tail", tail_to_json(t));
  report.set("window", window_to_json(w));
  report.set("square_consistent", Json(w.square_consistent(theta)));
  report.set_elapsed_ms(timer.ms());
  std::cout << w.ascii();
  emit(report, args.json_out);
  return 0;
}

int cmd_tail_symmetries(const CommonArgs& args, const std::string& tail,
                        const std::string& preperiod,
                        const std::string& tail_file, int window,
                        const std::string& bounds) {
  ThetaSpec theta = resolve_theta(args);
  Tail t = resolve_tail(theta, tail, preperiod, tail_file);
  auto [p_max, q_max] = parse_pair(bounds, "--bounds");
  Timer timer;
  LatticeWindow w = lattice_window(theta, t, window);
  SymmetryReport rep = [&] {
    try {
      return detect_symmetries(w, p_max, q_max);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Report report("tail symmetries", theta);
  report.set("tail", tail_to_json(t));
  report.set("symmetries", symmetry_to_json(rep));
  report.set_elapsed_ms(timer.ms());
  std::cout << "passing:";
  for (auto [p, q] : rep.passing) std::cout << " (" << p << "," << q << ")";
  std::cout << '\n';
  emit(report, args.json_out);
  return 0;
}

int cmd_tail_build(const CommonArgs& args, bool minimal,
                   const std::string& period, int segments,
                   std::uint64_t search_bound, int window,
                   const std::string& bounds) {
  ThetaSpec theta = resolve_theta(args);
  Timer timer;
  Tail t = [&] {
    try {
      if (!minimal) return build_aperiodic_tail(theta, segments, search_bound);
      auto [a, b] = parse_pair(period, "--period");
      return build_minimal_symmetry_tail(theta, {a, b}, segments, search_bound);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Report report(minimal ? "tail build-minimal" : "tail build-aperiodic", theta);
  report.set("tail", tail_to_json(t));
  if (window > 0) {
    LatticeWindow w = lattice_window(theta, t, window);
    report.set("window", window_to_json(w));
    if (!bounds.empty()) {
      auto [p_max, q_max] = parse_pair(bounds, "--bounds");
      SymmetryReport rep = detect_symmetries(w, p_max, q_max);
      report.set("symmetries", symmetry_to_json(rep));
      std::cout << "passing:";
      for (auto [p, q] : rep.passing) std::cout << " (" << p << "," << q << ")";
      std::cout << '\n';
    }
  }
  report.set_elapsed_ms(timer.ms());
  std::cout << t.description() << " (" << t.segments().size() << " segments)\n";
  emit(report, args.json_out);
  return 0;
}

int cmd_catalog_list() {
  for (const auto& e : catalog()) {
    std::cout << e.name;
    if (!e.expected.notes.empty()) std::cout << "  - " << e.expected.notes;
    std::cout << '\n';
  }
  return 0;
}

Json run_catalog_entry(const CatalogEntry& entry, const CommonArgs& args) {
  ThetaSpec theta = entry.build();
  Json checks = Json::array();
  bool all_pass = true;
  auto record = [&](const std::string& name, bool pass,
                    const std::string& detail = "") {
    Json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    all_pass = all_pass && pass;
  };

  const CatalogExpectation& exp = entry.expected;
  if (exp.minimal_period) {
    auto prim = primitive_pair(theta.m(), theta.n());
    int k_max = prim ? exp.minimal_period->first / prim->first : 1;
    MinimalPeriodOptions opts;
    opts.workers = args.workers;
    opts.seed = args.seed;
    PeriodicityVerdict v = minimal_period(theta, std::max(k_max, 1), opts);
    bool pass = v.tag == VerdictTag::Periodic &&
                v.period == std::pair<std::int64_t, std::int64_t>(
                                exp.minimal_period->first,
                                exp.minimal_period->second);
    record("minimal-period", pass, v.summary());
    if (pass && !exp.gamma_fragments.empty()) {
      bool gok = true;
      for (const auto& [u, vstr] : exp.gamma_fragments) {
        std::vector<int> uw, expected;
        for (char c : u) uw.push_back(c - '0');
        for (char c : vstr) expected.push_back(c - '0');
        if (v.gamma->apply(uw) != expected) gok = false;
      }
      if (exp.gamma_fragments_complete)
        gok = gok && v.gamma->forward.size() == exp.gamma_fragments.size();
      record("gamma-fragments", gok);
    }
  }
  if (exp.certificate) {
    auto cert = find_certificate(theta);
    bool pass = cert && cert->side == exp.certificate->first &&
                cert->fixed_set == exp.certificate->second &&
                (exp.certificate_word.empty() ||
                 cert->word == exp.certificate_word);
    record("certificate", pass);
  }
  if (exp.aperiodic_without_certificate) {
    record("certificate-absent", !find_certificate(theta).has_value());
    bool all_fail = true;
    for (int k = 1; k <= 4; ++k) {
      auto v = check_period(theta, PeriodCandidate::make(theta, k, k));
      all_fail = all_fail && v.tag == VerdictTag::NotPeriodic;
    }
    record("small-candidates-fail", all_fail);
  }
  if (exp.constancy) {
    CoordinateMaps maps = extract_maps(theta);
    auto da = constancy_depth(maps.alphas, 12);
    auto db = constancy_depth(maps.betas, 12);
    record("constancy-depth",
           da == exp.constancy->first && db == exp.constancy->second);
  }

  Json out;
  out["entry"] = entry.name;
  out["checks"] = std::move(checks);
  out["pass"] = all_pass;
  return out;
}

int cmd_catalog_run(const CommonArgs& args, const std::string& name,
                    bool all) {
  std::vector<const CatalogEntry*> entries;
  if (all) {
    for (const auto& e : catalog()) entries.push_back(&e);
  } else {
    const CatalogEntry* e = catalog_find(name);
    if (!e) throw UsageError("unknown catalog entry '" + name + "'");
    entries.push_back(e);
  }
  Json results = Json::array();
  Timer timer;
  for (const CatalogEntry* e : entries) {
    Json r = run_catalog_entry(*e, args);
    std::cout << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << e->name << '\n';
    results.push_back(std::move(r));
  }
  Json doc;
  doc["command"] = "catalog run";
  doc["results"] = std::move(results);
  doc["elapsed_ms"] = timer.ms();
  doc["version"] = kVersion;
  emit(Report(doc), args.json_out);
  return 0;
}

int cmd_family(const CommonArgs& args, int m) {
  if (m < 4 || m > 12) throw UsageError("--m must be between 4 and 12");
  ThetaSpec theta = family_theta(m);
  Timer timer;
  Report report("family", theta);
  report.set("m", Json(m));
  if (m % 2 == 0) {
    int k = (m - 2) / 2;
    PeriodCandidate cand = PeriodCandidate::make(theta, 12 * k, 12 * k);
    CheckOptions opts = make_check_options(args);
    auto size = checked_pow(m, cand.a);
    if (args.mode != "sampled" && size && *size <= opts.enumeration_limit)
      opts.mode = CheckOptions::Mode::Exhaustive;
    else
      opts.mode = CheckOptions::Mode::Sampled;
    PeriodicityVerdict v = check_period(theta, cand, opts);
    report.set("candidate", Json::array({cand.a, cand.b}));
    report.set_verdict(v);
    std::cout << "m=" << m << " at (" << cand.a << ",-" << cand.b
              << "): " << v.summary() << '\n';
  } else {
    // odd members are aperiodic; report the witnessing normal forms
    Json ids = Json::array();
    for (int k = 1; k <= 4; ++k) {
      Word w;
      for (int r = 0; r < 2 * k + 1; ++r) w.push_back(le(1));
      for (int r = 0; r < 2 * k + 1; ++r) w.push_back(lf(2));
      Word nf = normal_form(theta, w, NormalTarget::FE);
      Json row;
      row["k"] = k;
      row["word"] = w.str();
      row["normal_form"] = nf.str();
      ids.push_back(std::move(row));
      std::cout << w.str() << " = " << nf.str() << '\n';
    }
    report.set("identities", ids);
    auto cert = find_certificate(theta);
    report.set("certificate",
               cert ? certificate_to_json(*cert) : Json(nullptr));
  }
  report.set_elapsed_ms(timer.ms());
  emit(report, args.json_out);
  return 0;
}

int cmd_bench(const CommonArgs& args, const std::string& workload, int reps) {
  if (reps < 1) throw UsageError("--reps must be positive");
  ThetaSpec ec = catalog_find("eight-cycle-4x4")->build();
  Json runs = Json::array();
  std::cout.setf(std::ios::fixed);
  std::cout.precision(1);
  for (int r = 0; r < reps; ++r) {
    Timer timer;
    Json run;
    if (workload == "eight-cycle-exhaustive-12") {
      CheckOptions opts;
      opts.workers = args.workers;
      auto v = check_period(ec, PeriodCandidate::make(ec, 12, 12), opts);
      run["verdict"] = verdict_tag_name(v.tag);
      double secs = timer.ms() / 1000.0;
      run["words_per_second"] = secs > 0 ? (1 << 24) / secs : 0.0;
    } else if (workload == "nf-microbench") {
      std::mt19937_64 rng(args.seed);
      const std::uint64_t count = 1000000;
      std::uint64_t checksum = 0;
      std::vector<Letter> letters(24);
      for (std::uint64_t s = 0; s < count; ++s) {
        for (int k = 0; k < 12; ++k) {
          letters[2 * k] = le(1 + static_cast<int>(rng() % 4));
          letters[2 * k + 1] = lf(1 + static_cast<int>(rng() % 4));
        }
        std::shuffle(letters.begin(), letters.end(), rng);
        Word nf = normal_form(ec, Word(letters), NormalTarget::EF);
        checksum += nf[0].index;
      }
      double secs = timer.ms() / 1000.0;
      run["words"] = count;
      run["checksum"] = checksum;
      run["elementary_swaps"] = count * 144;
      run["swaps_per_second"] = secs > 0 ? count * 144 / secs : 0.0;
    } else if (workload == "sampled-million") {
      CheckOptions opts;
      opts.mode = CheckOptions::Mode::Sampled;
      opts.samples = 1000000;
      opts.seed = args.seed;
      auto v = check_period(ec, PeriodCandidate::make(ec, 12, 12), opts);
      run["verdict"] = verdict_tag_name(v.tag);
      double secs = timer.ms() / 1000.0;
      run["samples_per_second"] = secs > 0 ? opts.samples / secs : 0.0;
    } else {
      throw UsageError("unknown workload '" + workload +
                       "' (expected eight-cycle-exhaustive-12, nf-microbench, "
                       "or sampled-million)");
    }
    run["elapsed_ms"] = timer.ms();
    std::cout << workload << " rep " << r + 1 << ": " << run["elapsed_ms"]
              << " ms\n";
    runs.push_back(std::move(run));
  }
  Json doc;
  doc["command"] = "bench";
  doc["workload"] = workload;
  doc["repetitions"] = reps;
  doc["workers"] = args.workers;
  doc["runs"] = std::move(runs);
  doc["version"] = kVersion;
  emit(Report(doc), args.json_out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decision procedures for single-vertex rank-2 graph semigroups"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string period, bounds = "2,2", u_list, v_list;
  std::string tail_blocks, tail_pre, tail_file, cat_name, workload;
  int max_k = 8, window = 0, sub_p = 1, sub_q = 1, family_m = 4;
  int segments = 20, reps = 1;
  std::uint64_t oracle_limit = std::uint64_t{1} << 22;
  std::uint64_t search_bound = std::uint64_t{1} << 20;
  bool cat_all = false;

  CLI::App* check = app.add_subcommand("check", "test one period candidate");
  add_theta_options(check, args);
  add_run_options(check, args);
  check->add_option("--period", period, "candidate a,b for period (a,-b)")
      ->required();

  CLI::App* minp =
      app.add_subcommand("minimal-period", "search k*(a0,b0) for k <= K");
  add_theta_options(minp, args);
  add_run_options(minp, args);
  minp->add_option("--max-k", max_k, "largest multiple of the primitive pair");

  CLI::App* crit = app.add_subcommand(
      "criterion", "aperiodicity certificate and constancy depths");
  add_theta_options(crit, args);
  add_run_options(crit, args);

  CLI::App* gamma =
      app.add_subcommand("gamma", "extract gamma and verify the shift identity");
  add_theta_options(gamma, args);
  add_run_options(gamma, args);
  gamma->add_option("--period", period, "candidate a,b")->required();

  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force periodicity oracle over all pairs");
  add_theta_options(oracle, args);
  add_run_options(oracle, args);
  oracle->add_option("--period", period, "candidate a,b")->required();
  oracle->add_option("--limit", oracle_limit, "largest m^a * n^b enumerated");

  CLI::App* sub =
      app.add_subcommand("subgraph", "induced block sub-2-graph, if closed");
  add_theta_options(sub, args);
  add_run_options(sub, args);
  sub->add_option("--p", sub_p, "e-block length")->required();
  sub->add_option("--q", sub_q, "f-block length")->required();
  sub->add_option("--u", u_list, "e blocks, e.g. 11,12,13,24,34")->required();
  sub->add_option("--v", v_list, "f blocks")->required();

  CLI::App* tail = app.add_subcommand("tail", "lattice data of tails");
  tail->require_subcommand(1);
  auto add_tail_input = [&](CLI::App* c) {
    add_theta_options(c, args);
    add_run_options(c, args);
    c->add_option("--tail", tail_blocks, "period blocks, e.g. 1,1;2,2");
    c->add_option("--preperiod", tail_pre, "preperiod blocks");
    c->add_option("--tail-file", tail_file, "tail as JSON");
  };
  CLI::App* tw = tail->add_subcommand("window", "labels on a finite window");
  add_tail_input(tw);
  tw->add_option("--window", window, "window depth T")->required();
  CLI::App* ts = tail->add_subcommand("symmetries", "shift pairs that pass");
  add_tail_input(ts);
  ts->add_option("--window", window, "window depth T")->required();
  ts->add_option("--bounds", bounds, "p,q bounds");
  CLI::App* ta =
      tail->add_subcommand("build-aperiodic", "prefix breaking every shift");
  add_theta_options(ta, args);
  add_run_options(ta, args);
  ta->add_option("--segments", segments, "number of segments");
  ta->add_option("--search-bound", search_bound, "pair enumeration cap");
  ta->add_option("--window", window, "also analyze a window of this depth");
  ta->add_option("--bounds", bounds, "p,q bounds for the analysis");
  CLI::App* tm = tail->add_subcommand(
      "build-minimal", "prefix whose symmetries are the period multiples");
  add_theta_options(tm, args);
  add_run_options(tm, args);
  tm->add_option("--period", period, "verified minimal period a,b")->required();
  tm->add_option("--segments", segments, "number of segments");
  tm->add_option("--search-bound", search_bound, "pair enumeration cap");
  tm->add_option("--window", window, "also analyze a window of this depth");
  tm->add_option("--bounds", bounds, "p,q bounds for the analysis");

  CLI::App* cat = app.add_subcommand("catalog", "named examples");
  cat->require_subcommand(1);
  cat->add_subcommand("list", "list entries");
  CLI::App* crun = cat->add_subcommand("run", "check entries against their data");
  crun->add_option("name", cat_name, "entry name");
  crun->add_flag("--all", cat_all, "run every entry");
  add_run_options(crun, args);

  CLI::App* fam = app.add_subcommand("family", "the m x m flip family");
  add_run_options(fam, args);
  fam->add_option("--m", family_m, "family size (4..12)")->required();

  CLI::App* bench = app.add_subcommand("bench", "benchmark harness");
  bench->add_option("workload", workload, "workload name")->required();
  bench->add_option("--reps", reps, "repetitions");
  add_run_options(bench, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) return cmd_check(args, period);
    if (*minp) return cmd_minimal_period(args, max_k);
    if (*crit) return cmd_criterion(args);
    if (*gamma) return cmd_gamma(args, period);
    if (*oracle) return cmd_oracle(args, period, oracle_limit);
    if (*sub) return cmd_subgraph(args, sub_p, sub_q, u_list, v_list);
    if (*tw) return cmd_tail_window(args, tail_blocks, tail_pre, tail_file,
                                    window);
    if (*ts)
      return cmd_tail_symmetries(args, tail_blocks, tail_pre, tail_file,
                                 window, bounds);
    if (*ta)
      return cmd_tail_build(args, false, period, segments, search_bound,
                            window, bounds);
    if (*tm)
      return cmd_tail_build(args, true, period, segments, search_bound,
                            window, bounds);
    if (*cat) {
      if (cat->get_subcommand("list")->parsed()) return cmd_catalog_list();
      if (!cat_all && cat_name.empty())
        throw UsageError("catalog run: give an entry name or --all");
      return cmd_catalog_run(args, cat_name, cat_all);
    }
    if (*fam) return cmd_family(args, family_m);
    if (*bench) return cmd_bench(args, workload, reps);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
