#include "paretogof/inference.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "paretogof/error.hpp"
#include "parallel.hpp"

namespace pgof {

namespace {

constexpr std::string_view kNullStream = "null";
constexpr std::string_view kDataStream = "alt";
constexpr std::string_view kBootStream = "boot";
constexpr std::string_view kCacheHeader = "# paretogof critical-value cache";

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ArgumentError("significance level must lie in (0, 1], got " + std::to_string(alpha));
  }
}

void require_size(std::size_t n) {
  if (n < 2) throw ArgumentError("sample size must be at least 2 for simulation");
}

void require_pareto_path(const TestKind& kind, Estimator estimator) {
  if (estimator == Estimator::MME && !is_exponentiality_test(kind.tag)) {
    throw UnsupportedError("fixed critical values exist only for the MLE path; " + kind.name() +
                           " with the MME needs the parametric bootstrap (warp-speed power or "
                           "bootstrap p-values)");
  }
}

bool same_alpha(double a, double b) { return std::fabs(a - b) <= 1e-12; }

/// Draws and evaluates one replication, redrawing from the same stream when
/// the estimator is undefined. Returns false after kMaxRedraws attempts.
template <class Draw>
bool draw_and_evaluate(Draw&& draw_fn, std::vector<double>& buffer, StatisticEngine& engine,
                       std::span<const TestKind> kinds, Estimator estimator, std::span<double> out,
                       double* beta) {
  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    draw_fn(std::span<double>(buffer));
    std::sort(buffer.begin(), buffer.end());
    if (engine.evaluate(kinds, buffer, estimator, out, beta)) return true;
  }
  return false;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

TestKind parse_kind_name(const std::string& name, std::size_t line) {
  std::string base = name;
  double a = 1.0;
  const auto open = name.find("(a=");
  if (open != std::string::npos && name.back() == ')') {
    base = name.substr(0, open);
    try {
      a = std::stod(name.substr(open + 3, name.size() - open - 4));
    } catch (const std::exception&) {
      throw ParseError("bad tuning parameter in '" + name + "' on line " + std::to_string(line), line);
    }
  }
  const auto tag = parse_test_tag(base);
  if (!tag) throw ParseError("unknown test '" + name + "' on line " + std::to_string(line), line);
  return TestKind::make(*tag, a);
}

}  // namespace

double upper_quantile(std::span<const double> values, double alpha) {
  require_alpha(alpha);
  if (values.empty()) throw ArgumentError("cannot take a quantile of no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  // The small offset keeps (1 - 0.05) * 10000 from landing one rank high.
  auto rank = static_cast<std::size_t>(std::ceil((1.0 - alpha) * m - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<std::vector<double>> simulate_null_statistics(std::span<const TestKind> kinds,
                                                          std::size_t n, std::size_t reps,
                                                          std::uint64_t seed, std::size_t jobs) {
  require_size(n);
  if (reps == 0) throw ArgumentError("replication count must be positive");
  const std::uint64_t stream_seed = derive_seed(seed, kNullStream);
  std::vector<double> flat(kinds.size() * reps, std::numeric_limits<double>::quiet_NaN());
  detail::parallel_for(reps, jobs, [&](std::size_t begin, std::size_t end) {
    StatisticEngine engine;
    std::vector<double> buffer(n);
    std::vector<double> stats(kinds.size());
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream rng(stream_seed, r);
      const bool ok = draw_and_evaluate([&](std::span<double> out) { draw_pareto(1.0, rng, out); },
                                        buffer, engine, kinds, Estimator::MLE, stats, nullptr);
      if (!ok) continue;
      for (std::size_t k = 0; k < kinds.size(); ++k) flat[k * reps + r] = stats[k];
    }
  });
  std::vector<std::vector<double>> out(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    for (std::size_t r = 0; r < reps; ++r) {
      const double v = flat[k * reps + r];
      if (!std::isnan(v)) out[k].push_back(v);
    }
  }
  return out;
}

double null_critical_value(const TestKind& kind, Estimator estimator, std::size_t n, double alpha,
                           std::size_t reps, std::uint64_t seed, std::size_t jobs) {
  require_pareto_path(kind, estimator);
  require_alpha(alpha);
  if (reps < 1000) throw ArgumentError("critical values need at least 1000 replications");
  const TestKind kinds[] = {kind};
  const auto stats = simulate_null_statistics(kinds, n, reps, seed, jobs);
  return upper_quantile(stats.front(), alpha);
}

// CriticalValueTable -------------------------------------------------------

void CriticalValueTable::generate(std::span<const TestKind> kinds, std::size_t n,
                                  std::span<const double> alphas, std::size_t reps,
                                  std::uint64_t seed, std::size_t jobs) {
  for (const double a : alphas) require_alpha(a);
  if (reps < 1000) throw ArgumentError("critical values need at least 1000 replications");
  const auto stats = simulate_null_statistics(kinds, n, reps, seed, jobs);
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    for (const double alpha : alphas) {
      insert(CriticalValueEntry{kinds[k], Estimator::MLE, n, alpha, reps, seed,
                                upper_quantile(stats[k], alpha)});
    }
  }
}

void CriticalValueTable::insert(const CriticalValueEntry& entry) {
  for (auto& e : entries_) {
    if (e.kind == entry.kind && e.estimator == entry.estimator && e.n == entry.n &&
        same_alpha(e.alpha, entry.alpha)) {
      e = entry;
      return;
    }
  }
  entries_.push_back(entry);
}

std::optional<CriticalValueEntry> CriticalValueTable::find(const TestKind& kind, std::size_t n,
                                                           double alpha) const {
  for (const auto& e : entries_) {
    if (e.kind == kind && e.n == n && same_alpha(e.alpha, alpha)) return e;
  }
  return std::nullopt;
}

double CriticalValueTable::value(const TestKind& kind, std::size_t n, double alpha) const {
  const auto entry = find(kind, n, alpha);
  if (!entry) {
    throw ConfigError("no critical value for " + kind.name() + " at n=" + std::to_string(n) +
                      ", alpha=" + format_double(alpha));
  }
  return entry->value;
}

std::string CriticalValueTable::to_text() const {
  std::ostringstream os;
  os << kCacheHeader << "\n# format-version: " << kFormatVersion << "\n";
  os << "kind,estimator,n,alpha,reps,seed,value\n";
  for (const auto& e : entries_) {
    os << e.kind.name() << ',' << estimator_name(e.estimator) << ',' << e.n << ','
       << format_double(e.alpha) << ',' << e.reps << ',' << e.seed << ',' << format_double(e.value)
       << '\n';
  }
  return os.str();
}

CriticalValueTable CriticalValueTable::from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool saw_version = false;
  bool saw_columns = false;
  CriticalValueTable table;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# format-version:";
      if (line.rfind(tag, 0) == 0) {
        const int version = std::atoi(line.c_str() + tag.size());
        if (version != kFormatVersion) {
          throw ParseError("unsupported critical-value cache version " + std::to_string(version),
                           line_no);
        }
        saw_version = true;
      }
      continue;
    }
    if (!saw_columns) {
      if (line != "kind,estimator,n,alpha,reps,seed,value") {
        throw ParseError("missing column header in critical-value cache", line_no);
      }
      saw_columns = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw ParseError("expected 7 fields on line " + std::to_string(line_no), line_no);
    }
    try {
      CriticalValueEntry e;
      e.kind = parse_kind_name(fields[0], line_no);
      const auto est = parse_estimator(fields[1]);
      if (!est) throw ParseError("unknown estimator on line " + std::to_string(line_no), line_no);
      e.estimator = *est;
      e.n = std::stoul(fields[2]);
      e.alpha = std::stod(fields[3]);
      e.reps = std::stoul(fields[4]);
      e.seed = std::stoull(fields[5]);
      e.value = std::stod(fields[6]);
      table.insert(e);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("malformed number on line " + std::to_string(line_no), line_no);
    }
  }
  if (!saw_version) throw ParseError("critical-value cache has no format-version header", 1);
  return table;
}

void CriticalValueTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << to_text();
  if (!out) throw IoError("failed writing " + path.string());
}

CriticalValueTable CriticalValueTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

// Power --------------------------------------------------------------------

double PowerEstimate::power() const noexcept {
  return replications == 0 ? 0.0
                           : static_cast<double>(rejections) / static_cast<double>(replications);
}

double PowerEstimate::std_error() const noexcept {
  if (replications == 0) return 0.0;
  const double p = power();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(replications));
}

std::vector<PowerEstimate> power_fixed_critical(std::span<const TestKind> kinds,
                                                const Alternative& alt, std::size_t n, double alpha,
                                                std::size_t reps, const CriticalValueTable& table,
                                                std::uint64_t seed, std::size_t jobs) {
  require_size(n);
  require_alpha(alpha);
  if (reps == 0) throw ArgumentError("replication count must be positive");
  std::vector<double> critical(kinds.size());
  for (std::size_t k = 0; k < kinds.size(); ++k) critical[k] = table.value(kinds[k], n, alpha);

  const std::uint64_t stream_seed = derive_seed(seed, kDataStream);
  // rejected[k * reps + r]: 1 reject, 0 accept, 2 failed replication.
  std::vector<unsigned char> outcome(kinds.size() * reps, 2);
  detail::parallel_for(reps, jobs, [&](std::size_t begin, std::size_t end) {
    StatisticEngine engine;
    std::vector<double> buffer(n);
    std::vector<double> stats(kinds.size());
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream rng(stream_seed, r);
      const bool ok = draw_and_evaluate([&](std::span<double> out) { draw(alt, rng, out); }, buffer,
                                        engine, kinds, Estimator::MLE, stats, nullptr);
      if (!ok) continue;
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        outcome[k * reps + r] = stats[k] > critical[k] ? 1 : 0;
      }
    }
  });

  std::vector<PowerEstimate> out;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    PowerEstimate est{alt, kinds[k], Estimator::MLE, n, alpha, 0, 0, 0, seed};
    for (std::size_t r = 0; r < reps; ++r) {
      const unsigned char o = outcome[k * reps + r];
      if (o == 2) {
        ++est.failures;
      } else {
        ++est.replications;
        est.rejections += o;
      }
    }
    out.push_back(est);
  }
  return out;
}

PowerEstimate power_fixed_critical(const TestKind& kind, const Alternative& alt, std::size_t n,
                                   double alpha, std::size_t reps, const CriticalValueTable& table,
                                   std::uint64_t seed, std::size_t jobs) {
  const TestKind kinds[] = {kind};
  return power_fixed_critical(kinds, alt, n, alpha, reps, table, seed, jobs).front();
}

std::vector<PowerEstimate> warp_speed_power(std::span<const TestKind> kinds, Estimator estimator,
                                            const Alternative& alt, std::size_t n, double alpha,
                                            std::size_t reps, std::uint64_t seed,
                                            std::size_t jobs) {
  require_size(n);
  require_alpha(alpha);
  if (reps == 0) throw ArgumentError("replication count must be positive");
  const std::uint64_t data_seed = derive_seed(seed, kDataStream);
  const std::uint64_t boot_seed = derive_seed(seed, kBootStream);
  const std::size_t nk = kinds.size();
  std::vector<double> observed(nk * reps);
  std::vector<double> bootstrap(nk * reps);
  std::vector<unsigned char> valid(reps, 0);

  detail::parallel_for(reps, jobs, [&](std::size_t begin, std::size_t end) {
    StatisticEngine engine;
    std::vector<double> buffer(n);
    std::vector<double> stats(nk);
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream data(data_seed, r);
      double beta = 0.0;
      if (!draw_and_evaluate([&](std::span<double> out) { draw(alt, data, out); }, buffer, engine,
                             kinds, estimator, stats, &beta)) {
        continue;
      }
      for (std::size_t k = 0; k < nk; ++k) observed[k * reps + r] = stats[k];
      RandomStream boot(boot_seed, r);
      if (!draw_and_evaluate([&](std::span<double> out) { draw_pareto(beta, boot, out); }, buffer,
                             engine, kinds, estimator, stats, nullptr)) {
        continue;
      }
      for (std::size_t k = 0; k < nk; ++k) bootstrap[k * reps + r] = stats[k];
      valid[r] = 1;
    }
  });

  std::vector<PowerEstimate> out;
  std::vector<double> pool;
  for (std::size_t k = 0; k < nk; ++k) {
    PowerEstimate est{alt, kinds[k], estimator, n, alpha, 0, 0, 0, seed};
    pool.clear();
    for (std::size_t r = 0; r < reps; ++r) {
      if (valid[r]) pool.push_back(bootstrap[k * reps + r]);
    }
    est.failures = reps - pool.size();
    if (!pool.empty()) {
      const double critical = upper_quantile(pool, alpha);
      for (std::size_t r = 0; r < reps; ++r) {
        if (!valid[r]) continue;
        ++est.replications;
        if (observed[k * reps + r] > critical) ++est.rejections;
      }
    }
    out.push_back(est);
  }
  return out;
}

PowerEstimate warp_speed_power(const TestKind& kind, Estimator estimator, const Alternative& alt,
                               std::size_t n, double alpha, std::size_t reps, std::uint64_t seed,
                               std::size_t jobs) {
  const TestKind kinds[] = {kind};
  return warp_speed_power(kinds, estimator, alt, n, alpha, reps, seed, jobs).front();
}

// p-values -----------------------------------------------------------------

bool TestResult::rejects(double alpha) const {
  if (p_value) return *p_value <= alpha;
  if (critical_value) return statistic > *critical_value;
  return false;
}

std::vector<TestResult> bootstrap_pvalues(std::span<const TestKind> kinds, Estimator estimator,
                                          const Sample& sample, std::size_t resamples,
                                          std::uint64_t seed, std::size_t jobs) {
  if (resamples == 0) throw ArgumentError("bootstrap needs at least one resample");
  if (sample.size() < 2) throw ArgumentError("bootstrap needs a sample of size at least 2");
  const std::size_t n = sample.size();
  const std::size_t nk = kinds.size();

  std::vector<double> observed(nk);
  double beta = 0.0;
  {
    StatisticEngine engine;
    if (!engine.evaluate(kinds, sample.sorted(), estimator, observed, &beta)) {
      throw DomainError("shape estimate is undefined for this sample");
    }
  }

  const std::uint64_t boot_seed = derive_seed(seed, kBootStream);
  std::vector<double> boot(nk * resamples);
  std::vector<unsigned char> valid(resamples, 0);
  detail::parallel_for(resamples, jobs, [&](std::size_t begin, std::size_t end) {
    StatisticEngine engine;
    std::vector<double> buffer(n);
    std::vector<double> stats(nk);
    for (std::size_t b = begin; b < end; ++b) {
      RandomStream rng(boot_seed, b);
      if (!draw_and_evaluate([&](std::span<double> out) { draw_pareto(beta, rng, out); }, buffer,
                             engine, kinds, estimator, stats, nullptr)) {
        continue;
      }
      for (std::size_t k = 0; k < nk; ++k) boot[k * resamples + b] = stats[k];
      valid[b] = 1;
    }
  });

  std::vector<TestResult> out;
  for (std::size_t k = 0; k < nk; ++k) {
    std::size_t exceed = 0;
    std::size_t used = 0;
    for (std::size_t b = 0; b < resamples; ++b) {
      if (!valid[b]) continue;
      ++used;
      if (boot[k * resamples + b] >= observed[k]) ++exceed;
    }
    TestResult result;
    result.kind = kinds[k];
    result.estimator = estimator;
    result.statistic = observed[k];
    result.beta = beta;
    result.replications = used;
    result.p_value = (1.0 + static_cast<double>(exceed)) / (static_cast<double>(used) + 1.0);
    out.push_back(result);
  }
  return out;
}

TestResult bootstrap_pvalue(const TestKind& kind, Estimator estimator, const Sample& sample,
                            std::size_t resamples, std::uint64_t seed, std::size_t jobs) {
  const TestKind kinds[] = {kind};
  return bootstrap_pvalues(kinds, estimator, sample, resamples, seed, jobs).front();
}

TestResult null_distribution_pvalue(const TestKind& kind, const Sample& sample, std::size_t reps,
                                    std::uint64_t seed, std::size_t jobs) {
  const StatisticValue observed = evaluate(kind, sample, Estimator::MLE, DegeneracyPolicy::Clamp);
  const TestKind kinds[] = {kind};
  const auto null = simulate_null_statistics(kinds, sample.size(), reps, seed, jobs).front();
  const auto exceed = static_cast<double>(
      std::count_if(null.begin(), null.end(), [&](double t) { return t >= observed.value; }));
  TestResult result;
  result.kind = kind;
  result.estimator = Estimator::MLE;
  result.statistic = observed.value;
  result.beta = observed.beta_used;
  result.replications = null.size();
  result.p_value = (1.0 + exceed) / (static_cast<double>(null.size()) + 1.0);
  return result;
}

}  // namespace pgof
