#pragma once

#include "gaugebench/optimize.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gb {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

struct RunConfig {
    std::string task = "verify";
    int n = 2;
    std::vector<int> grid{8, 8};
    double spacing = 1.0;
    double mu = 1.0;
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerances;

    // minimize
    ActionKind kind = ActionKind::matrix_model;
    std::string start = "perturbed-zero";  // perturbed-zero | perturbed-vacuum | zero | vacuum
    double perturbation = 0.1;
    double target_action = 1e-6;
    MinimizeOptions optimizer;

    // verify
    std::vector<int> verify_n{2, 3};
    std::vector<std::vector<int>> verify_lattices{{8, 8}, {6, 6, 6}};
    int samples = 20;

    // spectral
    std::string triple = "m2-plus-c";  // two-point | two-point-real | m2-plus-c
    double mass = 1.0;
    std::string cutoff = "smooth-bump";  // smooth-bump | gaussian
    double lambda = 3.0;

    // gravity
    std::string preset = "sphere";  // flat | sphere | conformal
    double radius = 1.0;
    int points = 257;
    double G_newton = 1.0;

    bool corrupt_structure_constants = false;

    // Execution settings; not part of the echoed config.
    int workers = 1;
    bool record_timing = false;
    std::string out;

    LatticeSpec lattice() const;
    double tol(const std::string& check, double fallback) const;
};

// Throws config_error naming the offending field.
RunConfig parse_config(const json& j);
// Throws config_error with line and column for malformed JSON.
RunConfig load_config(const std::string& path);
json config_echo(const RunConfig& c);

struct RunResult {
    std::string task;
    json config;
    json results = json::object();
    Report checks;
    double timing_ms = 0.0;
    bool numerical_failure = false;
    std::string error;

    json to_json() const;
    // 0 success, 1 check failure, 3 numerical failure.
    int exit_code() const;
};

// Result JSON text, terminated by a newline.
std::string dump(const RunResult& r);

RunResult run(const RunConfig& c);

RunResult run_verify(const RunConfig& c);
RunResult run_matrix_model(const RunConfig& c);
RunResult run_lattice(const RunConfig& c);
RunResult run_algebroid(const RunConfig& c);
RunResult run_spectral(const RunConfig& c);
RunResult run_gravity(const RunConfig& c);
RunResult run_minimize(const RunConfig& c);

// Report wrapper that prefixes names and applies tolerance overrides.
class Checker {
public:
    Checker(Report& r, const RunConfig& c, std::string prefix) : r_(r), c_(c), prefix_(std::move(prefix)) {}
    bool add(const std::string& name, double residual, double tol);
    bool add_bool(const std::string& name, bool ok);
    void skip(const std::string& name);
    Checker sub(const std::string& p) const { return Checker(r_, c_, prefix_ + p + "."); }

private:
    Report& r_;
    const RunConfig& c_;
    std::string prefix_;
};

// Module invariant suites shared by run_verify and the per-module tasks.
json suite_liealg(Checker ck, int n, bool corrupt);
json suite_ncforms(Checker ck, int n, int samples, Rng& rng);
json suite_ncgauge(Checker ck, int n, int samples, Rng& rng);
json suite_latticeymh(Checker ck, int n, const LatticeSpec& lat, double mu, int workers, Rng& rng);
json suite_algebroid(Checker ck, int n, const LatticeSpec& lat, double mu, int workers, int samples, Rng& rng);
json suite_spectral(Checker ck, int samples, Rng& rng);
json suite_gravity(Checker ck, int points);
json suite_optimize(Checker ck, int n, int samples, Rng& rng);

}  // namespace gb
