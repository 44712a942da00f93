// pgof: command-line front end for the paretogof library.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paretogof/paretogof.h"

namespace {

constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitDomain = 4;

struct Failure {
  pgof_status status;
  std::string message;
};

int exit_code(pgof_status status) {
  switch (status) {
    case PGOF_OK: return 0;
    case PGOF_E_PARSE: return kExitParse;
    case PGOF_E_DOMAIN:
    case PGOF_E_DEGENERATE: return kExitDomain;
    case PGOF_E_ARGUMENT:
    case PGOF_E_CONFIG:
    case PGOF_E_UNSUPPORTED: return kExitUsage;
    default: return kExitOther;
  }
}

void check(pgof_status status) {
  if (status != PGOF_OK) throw Failure{status, pgof_last_error()};
}

void usage_error(const std::string& message) { throw Failure{PGOF_E_CONFIG, message}; }

// Owns a char* returned by the library.
std::string take(char* s) {
  std::string out(s == nullptr ? "" : s);
  pgof_string_free(s);
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<pgof_test_kind> parse_tests(const std::string& list, double tuning_a) {
  std::vector<pgof_test_kind> out;
  for (const auto& name : split(list)) {
    if (name == "all") {
      for (pgof_test t : {PGOF_TEST_KS, PGOF_TEST_CV, PGOF_TEST_AD, PGOF_TEST_ZA, PGOF_TEST_G,
                          PGOF_TEST_MP1, PGOF_TEST_MP2}) {
        out.push_back({t, tuning_a});
      }
      continue;
    }
    if (name == "exp") {
      for (pgof_test t : {PGOF_TEST_EXP_KS, PGOF_TEST_EXP_CV, PGOF_TEST_EXP_AD, PGOF_TEST_EXP_ZA}) {
        out.push_back({t, tuning_a});
      }
      continue;
    }
    pgof_test t{};
    check(pgof_parse_test(name.c_str(), &t));
    out.push_back({t, tuning_a});
  }
  if (out.empty()) usage_error("no tests selected");
  return out;
}

std::vector<pgof_estimator> parse_estimators(const std::string& text) {
  if (text == "both") return {PGOF_MME, PGOF_MLE};
  std::vector<pgof_estimator> out;
  for (const auto& name : split(text)) {
    pgof_estimator e{};
    check(pgof_parse_estimator(name.c_str(), &e));
    out.push_back(e);
  }
  if (out.empty()) usage_error("no estimator selected");
  return out;
}

pgof_format parse_format(const std::string& text) {
  if (text == "csv") return PGOF_FORMAT_CSV;
  if (text == "markdown" || text == "md") return PGOF_FORMAT_MARKDOWN;
  usage_error("unknown format '" + text + "' (use csv or markdown)");
  return PGOF_FORMAT_CSV;
}

std::vector<pgof_tour> parse_tours(const std::string& text) {
  if (text == "both") return {PGOF_TOUR_PGA, PGOF_TOUR_LIV};
  if (text == "pga" || text == "PGA") return {PGOF_TOUR_PGA};
  if (text == "liv" || text == "LIV") return {PGOF_TOUR_LIV};
  usage_error("unknown tour '" + text + "' (use pga, liv or both)");
  return {};
}

std::size_t default_jobs() {
  if (const char* env = std::getenv("PGOF_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

uint64_t resolve_seed(const std::optional<uint64_t>& seed) {
  const uint64_t s = seed ? *seed : (static_cast<uint64_t>(std::random_device{}()) << 32) ^
                                        std::random_device{}();
  std::cerr << "seed: " << s << "\n";
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{PGOF_E_IO, "cannot write '" + path + "'"};
  out << content;
  if (!out) throw Failure{PGOF_E_IO, "error writing '" + path + "'"};
}

void emit(const std::optional<std::string>& path, const std::string& content) {
  if (path) {
    write_file(*path, content);
  } else {
    std::cout << content;
  }
}

std::string with_spaces(double amount) {
  const long long v = std::llround(amount);
  std::string digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ' ';
    out += digits[i];
  }
  return v < 0 ? "-" + out : out;
}

// Shared options -----------------------------------------------------------

struct Common {
  std::string tests = "all";
  std::string estimator = "mme";
  double alpha = 0.05;
  std::optional<uint64_t> seed;
  std::string format = "markdown";
  std::optional<std::string> output;
  std::size_t jobs = default_jobs();
  double tuning_a = 1.0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tests", c.tests, "Comma list: ks,cv,ad,za,g,mp1,mp2,expks,... or all/exp")
      ->capture_default_str();
  app->add_option("--estimator", c.estimator, "mme, mle or both")->capture_default_str();
  app->add_option("--alpha", c.alpha, "Significance level")->capture_default_str();
  app->add_option("--seed", c.seed, "Master seed (generated and printed when absent)");
  app->add_option("--format", c.format, "csv or markdown")->capture_default_str();
  app->add_option("--output", c.output, "Write the report here instead of stdout");
  app->add_option("--jobs", c.jobs, "Worker threads (default from PGOF_JOBS)")
      ->capture_default_str();
  app->add_option("--tuning-a", c.tuning_a, "Weight parameter of the Mellin test")
      ->capture_default_str();
}

struct Results {
  pgof_results* ptr = nullptr;
  ~Results() { pgof_results_free(ptr); }
};

// Subcommands --------------------------------------------------------------

struct TestArgs {
  Common common;
  std::string input;
  std::size_t resamples = 10000;
  double scale = 1.0;
};

int cmd_test(const TestArgs& a) {
  const auto tests = parse_tests(a.common.tests, a.common.tuning_a);
  const auto estimators = parse_estimators(a.common.estimator);
  const pgof_format format = parse_format(a.common.format);
  pgof_sample* sample = nullptr;
  check(pgof_sample_load(a.input.c_str(), a.scale, &sample));
  const std::size_t n = pgof_sample_size(sample);
  const uint64_t seed = resolve_seed(a.common.seed);
  Results r;
  const pgof_status st = pgof_test_battery(sample, estimators.data(), estimators.size(),
                                           tests.data(), tests.size(), a.resamples, seed,
                                           a.common.jobs, &r.ptr);
  pgof_sample_free(sample);
  check(st);
  char* text = nullptr;
  check(pgof_results_render(r.ptr, format, a.common.alpha, &text));
  std::string report = take(text);
  if (format == PGOF_FORMAT_MARKDOWN) {
    char head[128];
    std::snprintf(head, sizeof head, "n = %zu, B = %zu, alpha = %g\n\n", n, a.resamples,
                  a.common.alpha);
    report = head + report;
  }
  emit(a.common.output, report);
  if (a.common.output) {
    // Decisions still go to the terminal when the report is written to a file.
    for (std::size_t i = 0; i < pgof_results_size(r.ptr); ++i) {
      pgof_test_result res{};
      check(pgof_results_get(r.ptr, i, &res));
      std::printf("%s %s: T = %.6g, p = %.4f, %s\n", pgof_test_name(res.kind.test),
                  res.estimator == PGOF_MME ? "MME" : "MLE", res.statistic, res.p_value,
                  res.p_value <= a.common.alpha ? "reject" : "do not reject");
    }
  }
  return 0;
}

struct CriticalArgs {
  Common common;
  std::string sizes = "20,30";
  std::string alphas = "0.05";
  std::size_t reps = 10000;
};

int cmd_critical(const CriticalArgs& a) {
  const auto tests = parse_tests(a.common.tests, a.common.tuning_a);
  const pgof_format format = parse_format(a.common.format);
  std::vector<double> alphas;
  for (const auto& s : split(a.alphas)) alphas.push_back(std::stod(s));
  const uint64_t seed = resolve_seed(a.common.seed);
  pgof_cv_table* table = pgof_cv_table_create();
  struct Guard {
    pgof_cv_table* t;
    ~Guard() { pgof_cv_table_free(t); }
  } guard{table};
  for (const auto& s : split(a.sizes)) {
    const std::size_t n = std::stoul(s);
    const uint64_t n_seed = pgof_derive_seed(seed, ("critical:n=" + std::to_string(n)).c_str());
    check(pgof_cv_table_generate(table, tests.data(), tests.size(), n, alphas.data(),
                                 alphas.size(), a.reps, n_seed, a.common.jobs));
  }
  if (a.common.output) {
    check(pgof_cv_table_save(table, a.common.output->c_str()));
  }
  char* text = nullptr;
  check(pgof_cv_table_render(table, format, &text));
  std::cout << take(text);
  return 0;
}

struct PowerArgs {
  Common common;
  std::string sizes = "20,30";
  std::string alternatives = "fixed";
  double scale_factor = 0.1;
  bool full = false;
  std::optional<std::string> config;
  std::optional<std::string> cache;
  CLI::App* app = nullptr;
};

bool given(const CLI::App* app, const std::string& name) { return app->count(name) > 0; }

int cmd_power(const PowerArgs& a) {
  pgof_study* study = pgof_study_create();
  if (study == nullptr) throw Failure{PGOF_E_INTERNAL, pgof_last_error()};
  struct Guard {
    pgof_study* s;
    ~Guard() { pgof_study_free(s); }
  } guard{study};

  if (a.config) {
    std::ifstream in(*a.config, std::ios::binary);
    if (!in) throw Failure{PGOF_E_IO, "cannot read config '" + *a.config + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    check(pgof_study_apply_json(study, ss.str().c_str()));
  }
  // Flags override the config file; defaults apply only without a config.
  const bool base = !a.config;
  if (base || given(a.app, "--n")) {
    std::vector<size_t> sizes;
    for (const auto& s : split(a.sizes)) sizes.push_back(std::stoul(s));
    check(pgof_study_set_sample_sizes(study, sizes.data(), sizes.size()));
  }
  if (base || given(a.app, "--alternatives")) {
    check(pgof_study_set_alternatives(study, a.alternatives.c_str()));
  }
  if (given(a.app, "--tests")) {
    const auto tests = parse_tests(a.common.tests, a.common.tuning_a);
    check(pgof_study_set_tests(study, tests.data(), tests.size()));
  }
  if (given(a.app, "--estimator")) {
    const auto est = parse_estimators(a.common.estimator);
    check(pgof_study_set_estimators(study, est.data(), est.size()));
  }
  if (base || given(a.app, "--alpha")) check(pgof_study_set_alpha(study, a.common.alpha));
  if (a.full) {
    check(pgof_study_set_scale_factor(study, 1.0));
  } else if (base || given(a.app, "--scale-factor")) {
    check(pgof_study_set_scale_factor(study, a.scale_factor));
  }
  if (base || given(a.app, "--jobs")) check(pgof_study_set_jobs(study, a.common.jobs));
  if (a.cache) check(pgof_study_set_cache(study, a.cache->c_str()));

  std::optional<uint64_t> seed = a.common.seed;
  if (!seed && a.config) {
    // A seed from the config file counts as explicit.
    std::ifstream in(*a.config, std::ios::binary);
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_object() && j.contains("seed") && j["seed"].is_number_unsigned()) {
      seed = j["seed"].get<uint64_t>();
    }
  }
  const uint64_t resolved = resolve_seed(seed);
  check(pgof_study_set_seed(study, resolved));
  check(pgof_study_validate(study));

  pgof_study_set_progress(
      study, [](const char* msg, void*) { std::cerr << msg << "\n"; }, nullptr);
  pgof_power_tables* tables = nullptr;
  check(pgof_study_run(study, &tables));
  struct TablesGuard {
    pgof_power_tables* t;
    ~TablesGuard() { pgof_power_tables_free(t); }
  } tables_guard{tables};

  const pgof_format format = parse_format(a.common.format);
  const std::size_t count = pgof_power_tables_count(tables);
  if (a.common.output) {
    const std::string& prefix = *a.common.output;
    for (std::size_t i = 0; i < count; ++i) {
      const std::string stem = prefix + "_n" + std::to_string(pgof_power_table_n(tables, i));
      char* csv = nullptr;
      check(pgof_power_table_render(tables, i, PGOF_FORMAT_CSV, &csv));
      write_file(stem + ".csv", take(csv));
      char* md = nullptr;
      check(pgof_power_table_render(tables, i, PGOF_FORMAT_MARKDOWN, &md));
      write_file(stem + ".md", take(md));
      std::cerr << "wrote " << stem << ".csv and " << stem << ".md\n";
    }
    char* manifest = nullptr;
    check(pgof_power_tables_manifest(tables, study, &manifest));
    write_file(prefix + "_manifest.json", take(manifest));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      char* text = nullptr;
      check(pgof_power_table_render(tables, i, format, &text));
      if (i > 0 && format == PGOF_FORMAT_MARKDOWN) std::cout << "\n";
      // CSV tables share a header; print it once.
      std::string body = take(text);
      if (i > 0 && format == PGOF_FORMAT_CSV) body = body.substr(body.find('\n') + 1);
      std::cout << body;
    }
  }
  std::fprintf(stderr, "total wall-clock: %.1f s\n", pgof_power_tables_wall_seconds(tables));
  return 0;
}

struct GolfArgs {
  Common common;
  std::string tour = "both";
  std::size_t resamples = 10000;
  double scale = 3500000.0;
};

void print_dataset(pgof_tour tour, pgof_format format) {
  std::vector<double> raw(pgof_golf_raw(tour, nullptr, 0));
  pgof_golf_raw(tour, raw.data(), raw.size());
  const char* name = tour == PGOF_TOUR_PGA ? "PGA" : "LIV";
  if (format == PGOF_FORMAT_CSV) {
    std::cout << "tour,rank,earnings\n";
    for (std::size_t i = 0; i < raw.size(); ++i) {
      std::cout << name << "," << (i + 1) << "," << std::llround(raw[i]) << "\n";
    }
  } else {
    std::cout << "## " << name << " season earnings above 3.5 million (USD)\n\n";
    std::cout << "| Rank | Earnings |\n| ---: | ---: |\n";
    for (std::size_t i = 0; i < raw.size(); ++i) {
      std::cout << "| " << (i + 1) << " | " << with_spaces(raw[i]) << " |\n";
    }
    std::cout << "\n";
  }
  std::cout << name << " players: " << raw.size() << ", average earnings: $"
            << with_spaces(pgof_golf_average(tour)) << "\n\n";
}

int cmd_golf(const GolfArgs& a) {
  const auto tests = parse_tests(a.common.tests, a.common.tuning_a);
  const auto estimators = parse_estimators(a.common.estimator);
  const pgof_format format = parse_format(a.common.format);
  const auto tours = parse_tours(a.tour);
  const uint64_t seed = resolve_seed(a.common.seed);
  std::string report;
  for (const pgof_tour tour : tours) {
    print_dataset(tour, format);
    Results r;
    check(pgof_golf_run(tour, estimators.data(), estimators.size(), tests.data(), tests.size(),
                        a.resamples, seed, a.common.jobs, a.scale, &r.ptr));
    char* text = nullptr;
    check(pgof_results_render(r.ptr, format, a.common.alpha, &text));
    const std::string name = tour == PGOF_TOUR_PGA ? "PGA" : "LIV";
    std::string block = take(text);
    if (format == PGOF_FORMAT_MARKDOWN) {
      block = "## " + name + " test results (B = " + std::to_string(a.resamples) + ")\n\n" +
              block + "\n";
    } else {
      // Prefix each CSV row with the tour.
      std::stringstream in(block);
      std::string line;
      std::string prefixed;
      bool header = true;
      while (std::getline(in, line)) {
        prefixed += (header ? std::string("tour") : name) + "," + line + "\n";
        header = false;
      }
      block = prefixed;
    }
    if (a.common.output) {
      report += block;
    } else {
      std::cout << block;
    }
  }
  if (a.common.output) write_file(*a.common.output, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Goodness-of-fit tests for the Pareto type I distribution"};
  app.set_version_flag("--version", std::string(pgof_version()));
  app.require_subcommand(1);

  TestArgs test_args;
  CLI::App* test = app.add_subcommand("test", "Test whether a data file follows a Pareto law");
  add_common(test, test_args.common);
  test->add_option("input", test_args.input, "One observation per line, or a one-column CSV")
      ->required();
  test->add_option("--b,--reps", test_args.resamples, "Bootstrap resamples")
      ->capture_default_str();
  test->add_option("--scale", test_args.scale, "Divide observations by this value")
      ->capture_default_str();

  CriticalArgs cv_args;
  CLI::App* cv = app.add_subcommand("critical-values", "Simulate null critical values (MLE path)");
  add_common(cv, cv_args.common);
  cv->add_option("--n", cv_args.sizes, "Comma list of sample sizes")->capture_default_str();
  cv->add_option("--alphas", cv_args.alphas, "Comma list of levels")->capture_default_str();
  cv->add_option("--reps", cv_args.reps, "Null replications (at least 1000)")
      ->capture_default_str();

  PowerArgs power_args;
  CLI::App* power = app.add_subcommand("power", "Estimate power tables");
  power_args.app = power;
  add_common(power, power_args.common);
  power_args.common.estimator = "both";
  power->add_option("--n", power_args.sizes, "Comma list of sample sizes")->capture_default_str();
  power->add_option("--alternatives", power_args.alternatives,
                    "Comma list such as gamma:1,pareto:2, or fixed, mix-exp, mix-hn, mix-ln")
      ->capture_default_str();
  power->add_option("--scale-factor", power_args.scale_factor,
                    "Replication scale factor in (0, 1]")
      ->capture_default_str();
  power->add_flag("--full", power_args.full, "Full replication counts (slow)");
  power->add_option("--config", power_args.config, "JSON study config; flags override it");
  power->add_option("--cache", power_args.cache, "Critical-value cache file");

  GolfArgs golf_args;
  CLI::App* golf = app.add_subcommand("golf", "Golf earnings application");
  add_common(golf, golf_args.common);
  golf_args.common.estimator = "both";
  golf->add_option("--tour", golf_args.tour, "pga, liv or both")->capture_default_str();
  golf->add_option("--b,--reps", golf_args.resamples, "Bootstrap resamples")
      ->capture_default_str();
  golf->add_option("--scale", golf_args.scale, "Earnings divisor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*test) return cmd_test(test_args);
    if (*cv) return cmd_critical(cv_args);
    if (*power) return cmd_power(power_args);
    if (*golf) return cmd_golf(golf_args);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_code(f.status);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad numeric argument\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: numeric argument out of range\n";
    return kExitUsage;
  }
  return kExitOther;
}
