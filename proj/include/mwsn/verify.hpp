#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwsn/config.hpp"
#include "mwsn/experiment.hpp"

namespace mwsn {

struct CheckResult {
    std::string name;
    bool passed = true;
    std::size_t evaluations = 0;
    std::size_t failed_iteration = 0;  // first failing iteration when !passed
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::size_t iterations = 0;

    bool passed() const;
    /// One "PASS name" / "FAIL name (iteration k): detail" line per check.
    std::string format() const;
};

struct VerifyOptions {
    int perturbation_trials = 200;  // per iteration
    double perturbation_epsilon = 1e-3;  // region widths
    std::uint64_t seed = 1;
};

/// Positions before the first step and after every iteration, as produced by
/// replaying the configured run.
std::vector<std::vector<Point>> replay(const ExperimentConfig& config, const ExecutionOptions& exec = {});

/// Re-derives every step from `positions` (positions[0] is the initial
/// deployment) and checks monotone distortion, budget feasibility, the
/// segment property, the closed-form optimality conditions of the configured
/// algorithm, agreement with the allocation oracle, and local optimality.
VerificationReport verify_positions(const ExperimentConfig& config, const std::vector<std::vector<Point>>& positions,
                                    const VerifyOptions& options = {});

VerificationReport verify_run(const ExperimentConfig& config, const ExecutionOptions& exec = {},
                              const VerifyOptions& options = {});

}  // namespace mwsn
