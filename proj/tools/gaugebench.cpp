#include "gaugebench/driver.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

struct Overrides {
    std::string config;
    std::optional<int> n;
    std::vector<int> grid;
    std::optional<double> mu;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> tol;
    std::string out;
    std::string gradient;
    std::optional<int> workers;
    std::string kind;
};

void add_options(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--n", o.n, "Matrix size n");
    sub->add_option("--grid", o.grid, "Lattice extents, e.g. --grid 8,8")->delimiter(',');
    sub->add_option("--mu", o.mu, "Higgs coupling mu");
    sub->add_option("--seed", o.seed, "RNG seed");
    sub->add_option("--tol", o.tol, "Tolerance override NAME=VALUE (repeatable)");
    sub->add_option("--out", o.out, "Write the result JSON here instead of stdout");
    sub->add_option("--gradient", o.gradient, "Gradient mode")->check(CLI::IsMember({"analytic", "fd"}));
    sub->add_option("--workers", o.workers, "Worker threads for lattice sums")->check(CLI::PositiveNumber);
}

gb::RunConfig build_config(const std::string& task, const Overrides& o) {
    gb::json j = gb::json::object();
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        try {
            j = gb::json::parse(in);
        } catch (const gb::json::parse_error& e) {
            throw gb::Error(gb::ErrorKind::config_error, o.config + ": " + e.what());
        }
        if (!j.is_object()) throw gb::Error(gb::ErrorKind::config_error, o.config + ": top level must be an object");
    }
    j["task"] = task;
    if (o.n) j["n"] = *o.n;
    if (!o.grid.empty()) j["grid"] = o.grid;
    if (o.mu) j["mu"] = *o.mu;
    if (o.seed) j["seed"] = *o.seed;
    for (const auto& t : o.tol) {
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0)
            throw gb::Error(gb::ErrorKind::config_error, "--tol expects NAME=VALUE, got '" + t + "'");
        try {
            j["tolerances"][t.substr(0, eq)] = std::stod(t.substr(eq + 1));
        } catch (const std::exception&) {
            throw gb::Error(gb::ErrorKind::config_error, "--tol value is not a number in '" + t + "'");
        }
    }
    if (!o.gradient.empty()) j["optimizer"]["gradient"] = o.gradient;
    if (!o.kind.empty()) j["optimizer"]["kind"] = o.kind;
    if (o.workers) j["execution"]["workers"] = *o.workers;
    if (!o.out.empty()) j["execution"]["out"] = o.out;
    return gb::parse_config(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for noncommutative, algebroid and gravitational gauge actions"};
    app.require_subcommand(1);
    Overrides o;
    const std::vector<std::pair<std::string, std::string>> tasks{
        {"verify", "Run every module's invariant checks"},
        {"matrix-model", "Lie data, Koszul calculus and matrix-model action checks"},
        {"lattice", "Lattice Yang-Mills-Higgs action, vacua and mass spectrum"},
        {"algebroid", "Generalized connections and their reduction to lattice fields"},
        {"spectral", "Finite spectral triple axioms, fluctuations and spectral action"},
        {"gravity", "Curvature and Einstein-Hilbert action of a preset metric"},
        {"minimize", "Gradient descent on an action and vacuum classification"},
    };
    for (const auto& [name, help] : tasks) {
        auto* sub = app.add_subcommand(name, help);
        add_options(sub, o);
        if (name == "minimize")
            sub->add_option("--kind", o.kind, "Action to minimize")
                ->check(CLI::IsMember({"matrix-model", "lattice-ymh", "algebroid"}));
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string task = app.get_subcommands().front()->get_name();

    gb::RunResult r;
    std::string out;
    try {
        const gb::RunConfig c = build_config(task, o);
        out = c.out;
        r = gb::run(c);
    } catch (const gb::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    const std::string text = gb::dump(r);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        f << text;
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
    }
    for (const auto& ch : r.checks.checks)
        if (!ch.passed) std::cerr << "FAIL " << ch.name << " residual " << ch.residual << " tol " << ch.tol << "\n";
    if (r.numerical_failure) std::cerr << "numerical failure: " << r.results.value("error", "") << "\n";
    return r.exit_code();
}
