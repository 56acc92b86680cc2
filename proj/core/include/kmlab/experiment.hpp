#ifndef KMLAB_EXPERIMENT_HPP
#define KMLAB_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "kmlab/certificate.hpp"
#include "kmlab/config.hpp"
#include "kmlab/summability.hpp"
#include "kmlab/trace.hpp"

namespace kmlab {

struct ExperimentResult {
  Trace trace;
  std::vector<Certificate> certificates;
  SummabilityReport summability;
  /// Auxiliary reports keyed by name (rate report, residual summability, ...).
  nlohmann::json reports;

  bool all_passed() const;
};

/// Runs the configured experiment: builds the problem and schedule, runs the
/// engine, computes the schedule summability probe and every requested
/// certificate.  Deterministic given (config, seed).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// 64-bit FNV-1a of the canonical (sorted-key) config dump, as hex.
std::string config_hash(const nlohmann::json& raw);

/// Writes trace.csv, certificates.json, summability.json, and manifest.json
/// into out_dir (created if missing).  Returns the file paths written.
std::vector<std::string> export_outputs(const ExperimentResult& result,
                                        const ExperimentConfig& cfg,
                                        const std::string& out_dir);

}  // namespace kmlab

#endif
