#include "gaugebench/driver.hpp"
#include "gaugebench/gravity.hpp"
#include "gaugebench/spectral.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace gb {

LatticeSpec RunConfig::lattice() const {
    LatticeSpec lat{static_cast<int>(grid.size()), grid, spacing};
    lat.validate();
    return lat;
}

double RunConfig::tol(const std::string& check, double fallback) const {
    const auto it = tolerances.find(check);
    return it == tolerances.end() ? fallback : it->second;
}

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::config_error, "field '" + field + "': " + msg);
}

void require_object(const json& j, const std::string& path, const std::set<std::string>& keys) {
    if (!j.is_object()) bad(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) bad(path.empty() ? k : path + "." + k, "unknown field");
}

int get_int(const json& v, const std::string& f, int lo, int hi) {
    if (!v.is_number_integer()) bad(f, "expected an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > hi) bad(f, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(x);
}

double get_positive(const json& v, const std::string& f) {
    if (!v.is_number()) bad(f, "expected a number");
    const double x = v.get<double>();
    if (!(x > 0.0) || !std::isfinite(x)) bad(f, "must be positive and finite");
    return x;
}

bool get_bool(const json& v, const std::string& f) {
    if (!v.is_boolean()) bad(f, "expected true or false");
    return v.get<bool>();
}

std::string get_choice(const json& v, const std::string& f, const std::set<std::string>& choices) {
    if (!v.is_string()) bad(f, "expected a string");
    const std::string s = v.get<std::string>();
    if (!choices.count(s)) {
        std::string list;
        for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
        bad(f, "'" + s + "' is not one of " + list);
    }
    return s;
}

std::vector<int> get_grid(const json& v, const std::string& f) {
    if (!v.is_array() || v.empty() || v.size() > 4) bad(f, "expected an array of 1 to 4 extents");
    std::vector<int> g;
    for (size_t i = 0; i < v.size(); ++i) g.push_back(get_int(v[i], f + "[" + std::to_string(i) + "]", 3, 4096));
    return g;
}

ActionKind parse_kind(const std::string& s) {
    if (s == "matrix-model") return ActionKind::matrix_model;
    if (s == "lattice-ymh") return ActionKind::lattice_ymh;
    return ActionKind::algebroid;
}

const std::set<std::string> tasks{"verify", "matrix-model", "lattice", "algebroid", "spectral", "gravity", "minimize"};

}  // namespace

RunConfig parse_config(const json& j) {
    RunConfig c;
    require_object(j, "", {"task", "n", "grid", "spacing", "mu", "seed", "tolerances", "optimizer", "verify",
                           "spectral", "gravity", "fault_injection", "execution"});
    if (j.contains("task")) c.task = get_choice(j["task"], "task", tasks);
    if (j.contains("n")) c.n = get_int(j["n"], "n", 1, 8);
    if (j.contains("grid")) c.grid = get_grid(j["grid"], "grid");
    if (j.contains("spacing")) c.spacing = get_positive(j["spacing"], "spacing");
    if (j.contains("mu")) c.mu = get_positive(j["mu"], "mu");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) bad("seed", "expected a non-negative integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (!t.is_object()) bad("tolerances", "expected an object of check name to tolerance");
        for (const auto& [k, v] : t.items()) {
            if (!v.is_number() || v.get<double>() < 0.0) bad("tolerances." + k, "expected a non-negative number");
            c.tolerances[k] = v.get<double>();
        }
    }
    if (j.contains("optimizer")) {
        const json& o = j["optimizer"];
        require_object(o, "optimizer", {"kind", "start", "perturbation", "target_action", "step", "max_iterations",
                                        "gradient", "gradient_tol", "armijo_c", "max_halvings", "fd_step"});
        if (o.contains("kind"))
            c.kind = parse_kind(get_choice(o["kind"], "optimizer.kind", {"matrix-model", "lattice-ymh", "algebroid"}));
        if (o.contains("start"))
            c.start = get_choice(o["start"], "optimizer.start",
                                 {"perturbed-zero", "perturbed-vacuum", "zero", "vacuum"});
        if (o.contains("perturbation")) c.perturbation = get_positive(o["perturbation"], "optimizer.perturbation");
        if (o.contains("target_action")) c.target_action = get_positive(o["target_action"], "optimizer.target_action");
        if (o.contains("step")) c.optimizer.step = get_positive(o["step"], "optimizer.step");
        if (o.contains("max_iterations"))
            c.optimizer.max_iterations = get_int(o["max_iterations"], "optimizer.max_iterations", 0, 10000000);
        if (o.contains("gradient"))
            c.optimizer.mode = get_choice(o["gradient"], "optimizer.gradient", {"analytic", "fd"}) == "analytic"
                                   ? GradientMode::analytic
                                   : GradientMode::finite_difference;
        if (o.contains("gradient_tol")) c.optimizer.gradient_tol = get_positive(o["gradient_tol"], "optimizer.gradient_tol");
        if (o.contains("armijo_c")) {
            c.optimizer.armijo_c = get_positive(o["armijo_c"], "optimizer.armijo_c");
            if (c.optimizer.armijo_c >= 1.0) bad("optimizer.armijo_c", "must be below 1");
        }
        if (o.contains("max_halvings"))
            c.optimizer.max_halvings = get_int(o["max_halvings"], "optimizer.max_halvings", 1, 200);
        if (o.contains("fd_step")) c.optimizer.fd_step = get_positive(o["fd_step"], "optimizer.fd_step");
    }
    if (j.contains("verify")) {
        const json& v = j["verify"];
        require_object(v, "verify", {"n_values", "lattices", "samples"});
        if (v.contains("n_values")) {
            if (!v["n_values"].is_array() || v["n_values"].empty()) bad("verify.n_values", "expected a non-empty array");
            c.verify_n.clear();
            for (size_t i = 0; i < v["n_values"].size(); ++i)
                c.verify_n.push_back(get_int(v["n_values"][i], "verify.n_values[" + std::to_string(i) + "]", 1, 6));
        }
        if (v.contains("lattices")) {
            if (!v["lattices"].is_array()) bad("verify.lattices", "expected an array of grids");
            c.verify_lattices.clear();
            for (size_t i = 0; i < v["lattices"].size(); ++i)
                c.verify_lattices.push_back(get_grid(v["lattices"][i], "verify.lattices[" + std::to_string(i) + "]"));
        }
        if (v.contains("samples")) c.samples = get_int(v["samples"], "verify.samples", 1, 100000);
    }
    if (j.contains("spectral")) {
        const json& s = j["spectral"];
        require_object(s, "spectral", {"triple", "mass", "cutoff", "lambda"});
        if (s.contains("triple"))
            c.triple = get_choice(s["triple"], "spectral.triple", {"two-point", "two-point-real", "m2-plus-c"});
        if (s.contains("mass")) c.mass = get_positive(s["mass"], "spectral.mass");
        if (s.contains("cutoff")) c.cutoff = get_choice(s["cutoff"], "spectral.cutoff", {"smooth-bump", "gaussian"});
        if (s.contains("lambda")) c.lambda = get_positive(s["lambda"], "spectral.lambda");
    }
    if (j.contains("gravity")) {
        const json& g = j["gravity"];
        require_object(g, "gravity", {"preset", "radius", "points", "G_newton"});
        if (g.contains("preset")) c.preset = get_choice(g["preset"], "gravity.preset", {"flat", "sphere", "conformal"});
        if (g.contains("radius")) c.radius = get_positive(g["radius"], "gravity.radius");
        if (g.contains("points")) c.points = get_int(g["points"], "gravity.points", 5, 4097);
        if (g.contains("G_newton")) c.G_newton = get_positive(g["G_newton"], "gravity.G_newton");
    }
    if (j.contains("fault_injection")) {
        const json& f = j["fault_injection"];
        require_object(f, "fault_injection", {"corrupt_structure_constants"});
        if (f.contains("corrupt_structure_constants"))
            c.corrupt_structure_constants =
                get_bool(f["corrupt_structure_constants"], "fault_injection.corrupt_structure_constants");
    }
    if (j.contains("execution")) {
        const json& e = j["execution"];
        require_object(e, "execution", {"workers", "record_timing", "out"});
        if (e.contains("workers")) c.workers = get_int(e["workers"], "execution.workers", 1, 256);
        if (e.contains("record_timing")) c.record_timing = get_bool(e["record_timing"], "execution.record_timing");
        if (e.contains("out")) {
            if (!e["out"].is_string()) bad("execution.out", "expected a path string");
            c.out = e["out"].get<std::string>();
        }
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config_error, "cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::config_error, path + ": " + e.what());
    }
    return parse_config(j);
}

json config_echo(const RunConfig& c) {
    json tol = json::object();
    for (const auto& [k, v] : c.tolerances) tol[k] = v;
    return {
        {"task", c.task},
        {"n", c.n},
        {"grid", c.grid},
        {"spacing", c.spacing},
        {"mu", c.mu},
        {"seed", c.seed},
        {"tolerances", tol},
        {"optimizer",
         {{"kind", to_string(c.kind)},
          {"start", c.start},
          {"perturbation", c.perturbation},
          {"target_action", c.target_action},
          {"step", c.optimizer.step},
          {"max_iterations", c.optimizer.max_iterations},
          {"gradient", to_string(c.optimizer.mode)},
          {"gradient_tol", c.optimizer.gradient_tol},
          {"armijo_c", c.optimizer.armijo_c},
          {"max_halvings", c.optimizer.max_halvings},
          {"fd_step", c.optimizer.fd_step}}},
        {"verify", {{"n_values", c.verify_n}, {"lattices", c.verify_lattices}, {"samples", c.samples}}},
        {"spectral", {{"triple", c.triple}, {"mass", c.mass}, {"cutoff", c.cutoff}, {"lambda", c.lambda}}},
        {"gravity", {{"preset", c.preset}, {"radius", c.radius}, {"points", c.points}, {"G_newton", c.G_newton}}},
        {"fault_injection", {{"corrupt_structure_constants", c.corrupt_structure_constants}}},
    };
}

json RunResult::to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks.checks)
        checks_json.push_back({{"name", c.name},
                               {"status", c.skipped ? "skipped" : (c.passed ? "pass" : "fail")},
                               {"residual", c.residual},
                               {"tol", c.tol}});
    return {{"task", task},
            {"config", config},
            {"results", results},
            {"checks", checks_json},
            {"timing_ms", timing_ms},
            {"schema_version", schema_version}};
}

int RunResult::exit_code() const {
    if (numerical_failure) return 3;
    return checks.passed() ? 0 : 1;
}

std::string dump(const RunResult& r) { return r.to_json().dump(2) + "\n"; }

namespace {

// Rows of [re, im] pairs.
json matrix_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

json real_matrix_json(const RMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

RunResult start(const RunConfig& c) {
    RunResult r;
    r.task = c.task;
    r.config = config_echo(c);
    return r;
}

}  // namespace

RunResult run_verify(const RunConfig& c) {
    RunResult r = start(c);
    Rng rng(c.seed);
    Checker root(r.checks, c, "");
    for (int n : c.verify_n) {
        const std::string tag = "n" + std::to_string(n);
        json& res = r.results[tag];
        res["liealg"] = suite_liealg(root.sub("liealg." + tag), n, c.corrupt_structure_constants);
        res["ncforms"] = suite_ncforms(root.sub("ncforms." + tag), n, c.samples, rng);
        res["ncgauge"] = suite_ncgauge(root.sub("ncgauge." + tag), n, c.samples, rng);
        for (const auto& g : c.verify_lattices) {
            std::string gname;
            for (int e : g) gname += (gname.empty() ? "" : "x") + std::to_string(e);
            const LatticeSpec lat{static_cast<int>(g.size()), g, c.spacing};
            res["latticeymh"][gname] = suite_latticeymh(root.sub("latticeymh." + tag + "." + gname), n, lat, c.mu,
                                                        c.workers, rng);
        }
        res["algebroid"] = suite_algebroid(root.sub("algebroid." + tag), n, LatticeSpec::cubic(2, 4, c.spacing), c.mu,
                                           c.workers, std::min(c.samples, 5), rng);
        res["optimize"] = suite_optimize(root.sub("driver." + tag), n, c.samples, rng);
    }
    r.results["spectral"] = suite_spectral(root.sub("spectral"), c.samples, rng);
    r.results["gravity"] = suite_gravity(root.sub("gravity"), c.points);
    int passed = 0, failed = 0, skipped = 0;
    for (const auto& ch : r.checks.checks) (ch.skipped ? skipped : ch.passed ? passed : failed)++;
    r.results["summary"] = {{"total", r.checks.checks.size()}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    return r;
}

RunResult run_matrix_model(const RunConfig& c) {
    RunResult r = start(c);
    Rng rng(c.seed);
    Checker root(r.checks, c, "");
    r.results["liealg"] = suite_liealg(root.sub("liealg"), c.n, c.corrupt_structure_constants);
    r.results["ncforms"] = suite_ncforms(root.sub("ncforms"), c.n, c.samples, rng);
    r.results["ncgauge"] = suite_ncgauge(root.sub("ncgauge"), c.n, c.samples, rng);
    return r;
}

RunResult run_lattice(const RunConfig& c) {
    RunResult r = start(c);
    Rng rng(c.seed);
    r.results = suite_latticeymh(Checker(r.checks, c, "latticeymh."), c.n, c.lattice(), c.mu, c.workers, rng);
    return r;
}

RunResult run_algebroid(const RunConfig& c) {
    RunResult r = start(c);
    Rng rng(c.seed);
    r.results = suite_algebroid(Checker(r.checks, c, "algebroid."), c.n, c.lattice(), c.mu, c.workers, c.samples, rng);
    return r;
}

RunResult run_spectral(const RunConfig& c) {
    RunResult r = start(c);
    Rng rng(c.seed);
    Checker ck(r.checks, c, "spectral.");
    FiniteSpectralTriple t = c.triple == "two-point"        ? two_point_minimal(c.mass)
                             : c.triple == "two-point-real" ? two_point_real(c.mass)
                                                            : m2_plus_c(Eigen::Vector2cd(c.mass, 0.5 * c.mass));
    const Report ax = check_axioms(t);
    for (const auto& a : ax.checks) {
        if (a.skipped)
            ck.skip("axiom." + a.name);
        else
            ck.add("axiom." + a.name, a.residual, a.tol);
    }
    const Cutoff chi = c.cutoff == "gaussian" ? Cutoff(gaussian_cutoff) : Cutoff(smooth_bump);
    const double S = spectral_action(t, chi, c.lambda);
    Eigen::SelfAdjointEigenSolver<Mat> es(t.D);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    double inv = 0.0;
    for (int i = 0; i < c.samples; ++i) {
        const Mat U = rng.unitary(t.hilbert_dim());
        auto rot = t;
        rot.D = U * t.D * U.adjoint();
        inv = std::max(inv, std::abs(spectral_action(rot, chi, c.lambda) - S));
    }
    ck.add("spectral_action_invariance", inv, 1e-12);
    r.results = {{"triple", c.triple}, {"hilbert_dim", t.hilbert_dim()}, {"ko_dim", t.ko_dim},
                 {"dirac", matrix_json(t.D)}, {"dirac_eigenvalues", ev}, {"spectral_action", S}};
    r.results["suite"] = suite_spectral(ck.sub("suite"), c.samples, rng);
    return r;
}

RunResult run_gravity(const RunConfig& c) {
    constexpr double pi = std::numbers::pi;
    RunResult r = start(c);
    Checker ck(r.checks, c, "gravity.");
    const int N = c.points;
    MetricGrid m;
    if (c.preset == "flat") {
        m = MetricGrid::from_function(Chart::uniform({0, 0}, {1, 1}, N),
                                      [](const RVec&) { return RMat(RMat::Identity(2, 2)); });
    } else if (c.preset == "sphere") {
        const double rad = c.radius;
        m = MetricGrid::from_function(Chart::uniform({0.3, 0.0}, {pi - 0.3, 1.0}, N), [rad](const RVec& x) {
            RMat g = RMat::Zero(2, 2);
            g(0, 0) = rad * rad;
            g(1, 1) = rad * rad * std::sin(x(0)) * std::sin(x(0));
            return g;
        });
    } else {
        m = MetricGrid::from_function(Chart::uniform({0.0, 0.0}, {2.0, 1.5}, N), [](const RVec& x) {
            const double lam = 0.3 * std::sin(x(0)) * std::cos(2 * x(1)) + 0.2 * x(0);
            return RMat(std::exp(2 * lam) * RMat::Identity(2, 2));
        });
    }
    const Chart& chart = m.chart;
    const auto G = christoffel(m);
    const auto ct = curvature_tensors(G);
    const auto R = scalar_curvature(m, ct);
    const ActionValue S = eh_action(m, c.G_newton);
    double tors = 0.0, rmin = 1e300, rmax = -1e300, rsum = 0.0, riem = 0.0;
    int count = 0;
    for (int s = 0; s < chart.volume(); ++s) {
        if (!chart.interior(s, ct.margin)) continue;
        for (const auto& T : ct.torsion[s]) tors = std::max(tors, T.cwiseAbs().maxCoeff());
        for (const auto& Rm : ct.riemann[s]) riem = std::max(riem, Rm.cwiseAbs().maxCoeff());
        rmin = std::min(rmin, R[s]);
        rmax = std::max(rmax, R[s]);
        rsum += R[s];
        ++count;
    }
    const double compat = metric_compatibility_residual(m, G);
    ck.add("torsion", tors, 1e-12);
    r.results = {{"preset", c.preset},
                 {"dimension", chart.d},
                 {"points", N},
                 {"scalar_curvature", {{"min", rmin}, {"max", rmax}, {"mean", rsum / count}}},
                 {"max_riemann", riem},
                 {"max_torsion", tors},
                 {"compatibility_residual", compat},
                 {"eh_action", S.value},
                 {"dimension_warning", S.dimension_warning}};
    if (c.preset == "flat") {
        ck.add("flat_curvature", riem, 1e-12);
        ck.add("flat_action", std::abs(S.value), 1e-12);
    } else if (c.preset == "sphere") {
        const double exact = 2.0 / (c.radius * c.radius);
        const double h0 = chart.h(0), h1 = chart.h(1);
        const double area = c.radius * c.radius * (std::cos(0.3 + 1.5 * h0) - std::cos(pi - 0.3 - 1.5 * h0)) *
                            (1.0 - 3.0 * h1);
        const double S_exact = -1.0 / (16 * pi * c.G_newton) * exact * area;
        const double curv_err = std::max(std::abs(rmax - exact), std::abs(rmin - exact)) / exact;
        ck.add("sphere_curvature", curv_err, 0.01);
        ck.add("chart_independence", (rmax - rmin) / (rsum / count), 0.02);
        ck.add("sphere_eh_action", std::abs(S.value - S_exact) / std::abs(S_exact), 0.02);
        r.results["analytic_scalar_curvature"] = exact;
        r.results["analytic_eh_action"] = S_exact;
    }
    return r;
}

RunResult run_minimize(const RunConfig& c) {
    RunResult r = start(c);
    Rng rng(c.seed);
    Checker ck(r.checks, c, "minimize.");
    auto L = make_su(c.n);
    const ActionProblem p = c.kind == ActionKind::matrix_model ? ActionProblem::matrix_model(L)
                            : c.kind == ActionKind::lattice_ymh
                                ? ActionProblem::lattice_ymh(L, c.lattice(), c.mu, c.workers)
                                : ActionProblem::algebroid(L, c.lattice(), c.mu, c.workers);
    RVec x0 = c.start == "zero" || c.start == "perturbed-zero" ? p.zero_point() : p.vacuum_point();
    if (c.start == "perturbed-zero" || c.start == "perturbed-vacuum")
        for (int i = 0; i < x0.size(); ++i) x0(i) += c.perturbation * rng.normal();

    MinimizeResult m;
    try {
        m = minimize(p, x0, c.optimizer);
    } catch (const OptimizationFailure& e) {
        r.results = {{"kind", to_string(c.kind)}, {"error", e.what()}, {"trace", e.trace()}};
        r.numerical_failure = true;
        return r;
    }
    bool monotone = true;
    for (size_t i = 1; i < m.trace.size(); ++i) monotone = monotone && m.trace[i] <= m.trace[i - 1];
    VacuumClass vc;
    if (c.kind == ActionKind::matrix_model) {
        const auto A = p.connection(m.x).A;
        vc = classify_vacuum(constant_scalar(LatticeSpec::cubic(1, 3, 1.0), A), *L);
    } else if (c.kind == ActionKind::lattice_ymh) {
        vc = classify_vacuum(p.fields(m.x).second, *L);
    } else {
        const auto w = p.generalized(m.x);
        vc = classify_vacuum(to_lattice_fields(w).second, *L);
    }
    ck.add("final_action", m.trace.back(), c.target_action);
    ck.add_bool("monotone", monotone);
    r.results = {{"kind", to_string(c.kind)},
                 {"gradient", to_string(m.mode)},
                 {"parameters", p.size()},
                 {"iterations", m.iterations},
                 {"converged", m.converged},
                 {"gradient_norm", m.gradient_norm},
                 {"initial_action", m.trace.front()},
                 {"final_action", m.trace.back()},
                 {"trace", m.trace},
                 {"classification",
                  {{"orbit", to_string(vc.orbit)},
                   {"distance_orbit1", vc.distance_orbit1},
                   {"distance_orbit2", vc.distance_orbit2},
                   {"max_site_deviation", vc.max_site_deviation},
                   {"gram", real_matrix_json(vc.gram)}}}};
    if (c.kind == ActionKind::matrix_model) {
        json A = json::array();
        for (const auto& m : p.connection(m.x).A) A.push_back(matrix_json(m));
        r.results["connection"] = A;
    }
    return r;
}

RunResult run(const RunConfig& c) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    try {
        if (c.task == "verify") r = run_verify(c);
        else if (c.task == "matrix-model") r = run_matrix_model(c);
        else if (c.task == "lattice") r = run_lattice(c);
        else if (c.task == "algebroid") r = run_algebroid(c);
        else if (c.task == "spectral") r = run_spectral(c);
        else if (c.task == "gravity") r = run_gravity(c);
        else if (c.task == "minimize") r = run_minimize(c);
        else throw Error(ErrorKind::config_error, "field 'task': unknown task '" + c.task + "'");
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config_error) throw;
        r = RunResult{};
        r.task = c.task;
        r.config = config_echo(c);
        r.numerical_failure = true;
        r.results = {{"error", e.what()}};
    }
    if (c.record_timing)
        r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace gb
