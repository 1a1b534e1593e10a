#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spoamp/analysis.hpp"
#include "spoamp/schedule.hpp"
#include "spoamp/state.hpp"

namespace spoamp {

// Every exported file starts with '#'-prefixed comment lines carrying the
// tool version and the fully resolved configuration, then a CSV header.
// Doubles are printed with 17 significant digits so identical runs produce
// byte-identical files.

/// Complex-plane amplitude snapshot: `x,f,amp_re,amp_im` per basis index, or
/// `x,f,mult,amp_re,amp_im` per unique value for compressed states.
void write_snapshot(const std::filesystem::path& path, const QuantumState& state,
                    const ObjectiveTable& table,
                    const std::vector<std::string>& config_comments);

/// Iteration trace: `iter,k,p_solution,p_worst,mean_re,mean_im,norm_err,amplifying`.
void write_trace(const std::filesystem::path& path, const RunTrace& trace,
                 const std::vector<std::string>& config_comments);

/// k-sensitivity curve: `k,peak_p,peak_iter`.
void write_scan_curve(const std::filesystem::path& path,
                      const std::vector<ScanPoint>& curve,
                      const std::vector<std::string>& config_comments);

/// Expected-queries curve: `t,e_q,p_solution`.
void write_eq_curve(const std::filesystem::path& path, const QueryAnalysis& analysis,
                    const std::vector<std::string>& config_comments);

/// Size-scaling ratio curves: `n,iter,ratio`.
void write_size_study(const std::filesystem::path& path,
                      const std::vector<SizeScalingPoint>& points,
                      const std::vector<std::string>& config_comments);

/// Advantage report as a JSON document.
void write_report(const std::filesystem::path& path, const AdvantageReport& report,
                  const std::string& config_json);

/// Machine-readable run descriptor (config, schedule, peak statistics).
void write_run_descriptor(const std::filesystem::path& path, const RunTrace& trace,
                          const std::string& config_json);

/// 17-significant-digit decimal rendering used across all writers.
std::string format_double(double value);

}  // namespace spoamp
