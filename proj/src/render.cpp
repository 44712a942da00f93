#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "paretogof/study.hpp"

namespace pgof {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string full(double v) { return fmt("%.17g", v); }

std::string column_title(const PowerColumn& col) {
  if (is_exponentiality_test(col.kind.tag)) return col.kind.name();
  return col.kind.name() + " " + std::string(estimator_name(col.estimator));
}

std::string markdown_row(const std::vector<std::string>& cells) {
  std::string line = "|";
  for (const auto& c : cells) line += " " + c + " |";
  return line + "\n";
}

std::string markdown_rule(std::size_t columns) {
  std::string line = "|";
  for (std::size_t i = 0; i < columns; ++i) line += i == 0 ? " --- |" : " ---: |";
  return line + "\n";
}

std::string render_power_markdown(const PowerTable& table) {
  double max_se = 0.0;
  for (const auto& row : table.cells) {
    for (const auto& c : row) {
      if (c.estimate) max_se = std::max(max_se, c.estimate->std_error());
    }
  }
  std::string out = "n = " + std::to_string(table.n) + ", alpha = " + fmt("%g", table.alpha) +
                    ", power reps = " + std::to_string(table.replications.power) +
                    ", warp-speed reps = " + std::to_string(table.replications.warp_speed) +
                    ", max SE = " + fmt("%.4f", max_se) + "\n\n";
  std::vector<std::string> header{"Distribution"};
  for (const auto& col : table.columns) header.push_back(column_title(col));
  out += markdown_row(header);
  out += markdown_rule(header.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::string> line{label(table.rows[r])};
    for (const auto& c : table.cells[r]) {
      if (c.estimate) {
        line.push_back(std::to_string(std::lround(100.0 * c.estimate->power())));
      } else {
        line.push_back("n/a");
      }
    }
    out += markdown_row(line);
  }
  return out;
}

std::string render_power_csv(const PowerTable& table) {
  std::string out =
      "n,alternative,test,estimator,power,std_error,rejections,replications,failures,alpha,seed,"
      "error\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string alt = alternative_token(table.rows[r]);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const PowerColumn& col = table.columns[c];
      const PowerCell& cell = table.cells[r][c];
      out += std::to_string(table.n) + "," + alt + "," + col.kind.name() + "," +
             std::string(estimator_name(col.estimator)) + ",";
      if (cell.estimate) {
        const PowerEstimate& e = *cell.estimate;
        out += fmt("%.4f", e.power()) + "," + fmt("%.4f", e.std_error()) + "," +
               std::to_string(e.rejections) + "," + std::to_string(e.replications) + "," +
               std::to_string(e.failures) + "," + fmt("%g", table.alpha) + "," +
               std::to_string(e.seed) + ",\n";
      } else {
        std::string msg = cell.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        out += ",,,,," + fmt("%g", table.alpha) + ",," + msg + "\n";
      }
    }
  }
  return out;
}

std::string pvalue_text(const TestResult& r) {
  if (r.p_value) return fmt("%.4f", *r.p_value);
  return "";
}

std::string render_results_markdown(const std::vector<TestResult>& results, double alpha) {
  std::vector<Estimator> estimators;
  std::vector<TestKind> kinds;
  for (const auto& r : results) {
    if (std::find(estimators.begin(), estimators.end(), r.estimator) == estimators.end()) {
      estimators.push_back(r.estimator);
    }
    if (std::find(kinds.begin(), kinds.end(), r.kind) == kinds.end()) kinds.push_back(r.kind);
  }
  std::vector<std::string> header{"Test"};
  for (const Estimator e : estimators) {
    const std::string name(estimator_name(e));
    header.push_back("Statistic " + name);
    header.push_back("p-value " + name);
  }
  std::string out = markdown_row(header) + markdown_rule(header.size());
  for (const auto& kind : kinds) {
    std::vector<std::string> line{kind.name()};
    for (const Estimator e : estimators) {
      const auto it = std::find_if(results.begin(), results.end(), [&](const TestResult& r) {
        return r.kind == kind && r.estimator == e;
      });
      if (it == results.end()) {
        line.insert(line.end(), {"", ""});
        continue;
      }
      line.push_back(fmt("%.3f", it->statistic));
      line.push_back(pvalue_text(*it) + (it->rejects(alpha) ? " *" : ""));
    }
    out += markdown_row(line);
  }
  out += "\n* rejects at alpha = " + fmt("%g", alpha) + "\n";
  return out;
}

std::string render_results_csv(const std::vector<TestResult>& results, double alpha) {
  std::string out = "test,estimator,statistic,beta,p_value,critical_value,replications,alpha,reject\n";
  for (const auto& r : results) {
    out += r.kind.name() + "," + std::string(estimator_name(r.estimator)) + "," +
           full(r.statistic) + "," + full(r.beta) + "," + (r.p_value ? full(*r.p_value) : "") +
           "," + (r.critical_value ? full(*r.critical_value) : "") + "," +
           std::to_string(r.replications) + "," + fmt("%g", alpha) + "," +
           (r.rejects(alpha) ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace

std::string render_table(const PowerTable& table, TableFormat format) {
  return format == TableFormat::Markdown ? render_power_markdown(table) : render_power_csv(table);
}

std::string render_table(const std::vector<TestResult>& results, TableFormat format, double alpha) {
  return format == TableFormat::Markdown ? render_results_markdown(results, alpha)
                                         : render_results_csv(results, alpha);
}

std::string render_table(const CriticalValueTable& table, TableFormat format) {
  if (format == TableFormat::Csv) return table.to_text();
  std::string out = markdown_row({"Test", "Estimator", "n", "alpha", "reps", "Critical value"});
  out += markdown_rule(6);
  for (const auto& e : table.entries()) {
    out += markdown_row({e.kind.name(), std::string(estimator_name(e.estimator)),
                         std::to_string(e.n), fmt("%g", e.alpha), std::to_string(e.reps),
                         fmt("%.6f", e.value)});
  }
  return out;
}

std::string study_manifest(const StudyConfig& config, const std::vector<PowerTable>& tables) {
  using json = nlohmann::json;
  json j;
  j["library"] = "paretogof";
  j["version"] = std::string(library_version());
  j["config"] = json::parse(config.to_json());
  const ReplicationCounts counts = config.effective_replications();
  j["effective_replications"] = {{"critical", counts.critical},
                                 {"power", counts.power},
                                 {"warp_speed", counts.warp_speed}};
  j["tables"] = json::array();
  double total = 0.0;
  for (const auto& t : tables) {
    std::size_t failed = 0;
    for (const auto& row : t.cells) {
      for (const auto& c : row) failed += c.estimate ? 0 : 1;
    }
    j["tables"].push_back({{"n", t.n},
                           {"alpha", t.alpha},
                           {"seed", t.seed},
                           {"rows", t.rows.size()},
                           {"columns", t.columns.size()},
                           {"failed_cells", failed},
                           {"wall_seconds", t.wall_seconds}});
    total += t.wall_seconds;
  }
  j["wall_seconds"] = total;
  return j.dump(2) + "\n";
}

}  // namespace pgof
