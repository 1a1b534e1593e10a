#include "spoamp/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "spoamp/errors.hpp"
#include "spoamp/version.hpp"

namespace spoamp {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write output file: " + path.string());
  return out;
}

void write_header(std::ofstream& out, const std::vector<std::string>& comments) {
  out << "# " << kToolName << " " << kVersion << "\n";
  for (const auto& line : comments) out << "# " << line << "\n";
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_snapshot(const std::filesystem::path& path, const QuantumState& state,
                    const ObjectiveTable& table,
                    const std::vector<std::string>& config_comments) {
  auto out = open_output(path);
  write_header(out, config_comments);
  if (state.rep == Representation::Dense) {
    if (state.n_states != table.n_states())
      throw DimensionError("snapshot: state and table sizes differ");
    out << "x,f,amp_re,amp_im\n";
    for (Eigen::Index x = 0; x < state.n_states; ++x) {
      out << x << ',' << format_double(table.values[x]) << ','
          << format_double(state.amps[x].real()) << ','
          << format_double(state.amps[x].imag()) << '\n';
    }
  } else {
    out << "x,f,mult,amp_re,amp_im\n";
    Eigen::Index x = 0;
    for (Eigen::Index e = 0; e < state.entry_count(); ++e) {
      out << x << ',' << format_double(state.values[e]) << ',' << state.mults[e]
          << ',' << format_double(state.amps[e].real()) << ','
          << format_double(state.amps[e].imag()) << '\n';
      x += state.mults[e];
    }
  }
}

void write_trace(const std::filesystem::path& path, const RunTrace& trace,
                 const std::vector<std::string>& config_comments) {
  auto out = open_output(path);
  write_header(out, config_comments);
  out << "# table: " << trace.table_descriptor << "\n";
  out << "iter,k,p_solution,p_worst,mean_re,mean_im,norm_err,amplifying\n";
  for (const auto& rec : trace.records) {
    out << rec.iteration << ',' << format_double(rec.k_used) << ','
        << format_double(rec.p_solution) << ',' << format_double(rec.p_worst) << ','
        << format_double(rec.mean.real()) << ',' << format_double(rec.mean.imag())
        << ',' << format_double(rec.norm_error) << ',' << (rec.amplifying ? 1 : 0)
        << '\n';
  }
}

void write_scan_curve(const std::filesystem::path& path,
                      const std::vector<ScanPoint>& curve,
                      const std::vector<std::string>& config_comments) {
  auto out = open_output(path);
  write_header(out, config_comments);
  out << "k,peak_p,peak_iter\n";
  for (const auto& point : curve) {
    out << format_double(point.k) << ',' << format_double(point.peak_p) << ','
        << point.peak_iteration << '\n';
  }
}

void write_eq_curve(const std::filesystem::path& path, const QueryAnalysis& analysis,
                    const std::vector<std::string>& config_comments) {
  auto out = open_output(path);
  write_header(out, config_comments);
  out << "t,e_q,p_solution\n";
  for (const auto& point : analysis.e_q_curve) {
    out << point.t << ',' << format_double(point.e_q) << ','
        << format_double(point.p) << '\n';
  }
}

void write_size_study(const std::filesystem::path& path,
                      const std::vector<SizeScalingPoint>& points,
                      const std::vector<std::string>& config_comments) {
  auto out = open_output(path);
  write_header(out, config_comments);
  out << "n,iter,ratio\n";
  for (const auto& point : points) {
    for (std::size_t t = 0; t < point.ratio.size(); ++t) {
      out << point.n_states << ',' << t << ',' << format_double(point.ratio[t])
          << '\n';
    }
  }
}

void write_report(const std::filesystem::path& path, const AdvantageReport& report,
                  const std::string& config_json) {
  nlohmann::json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  if (!config_json.empty()) doc["config"] = nlohmann::json::parse(config_json);
  doc["n_states"] = report.n_states;
  doc["e_c"] = report.queries.e_c;
  doc["p_c"] = report.queries.p_c;
  doc["t_star"] = report.queries.t_star;
  doc["e_q_star"] = report.queries.e_q_star;
  doc["p_at_t_star"] = report.queries.p_at_t_star;
  doc["speedup"] = report.speedup;
  doc["trials_for_99"] = report.trials_for_99;
  doc["tuning_queries"] = report.tuning_queries;
  auto out = open_output(path);
  out << doc.dump(2) << "\n";
}

void write_run_descriptor(const std::filesystem::path& path, const RunTrace& trace,
                          const std::string& config_json) {
  nlohmann::json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  if (!config_json.empty()) doc["config"] = nlohmann::json::parse(config_json);
  doc["table"] = trace.table_descriptor;
  doc["n_states"] = trace.n_states;
  doc["iterations"] = trace.records.size() - 1;
  doc["schedule"] = trace.schedule.entries;
  const IterationRecord& peak = trace.peak();
  doc["peak"] = {{"iteration", peak.iteration}, {"p_solution", peak.p_solution}};
  doc["tuning_queries"] = trace.tuning_queries;
  auto out = open_output(path);
  out << doc.dump(2) << "\n";
}

}  // namespace spoamp
