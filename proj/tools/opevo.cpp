// Command-line front end: scenario runner, method comparison, Heisenberg
// series printer, and the inverted-oscillator splitting demo.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "opevo/opevo.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw opevo::ValidationError("cannot open output path: " + path);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
}

opevo::ScenarioConfig load_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw opevo::ValidationError("cannot read config: " + path);
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw opevo::ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    return opevo::parse_scenario(j);
}

void write_outputs(const opevo::RunArtifacts& a) {
    for (const auto& o : a.outputs) {
        switch (o.kind) {
            case opevo::OutputRequest::Kind::DensityCsv: write_file(o.path, a.density_csv); break;
            case opevo::OutputRequest::Kind::ObservablesCsv:
                write_file(o.path, a.observables_csv);
                break;
            case opevo::OutputRequest::Kind::ComparisonJson:
                write_file(o.path, a.comparison_json);
                break;
            case opevo::OutputRequest::Kind::MetadataJson:
                write_file(o.path, a.metadata_json);
                break;
        }
    }
}

void print_summary(const opevo::RunArtifacts& a) {
    using opevo::detail::fmt17;
    if (!a.comparison_rows.empty()) {
        for (const auto& r : a.comparison_rows)
            std::cout << "t=" << fmt17(r.t) << " l2=" << fmt17(r.l2)
                      << " fidelity=" << fmt17(r.fidelity) << "\n";
        return;
    }
    for (const auto& r : a.observables_rows)
        std::cout << "t=" << fmt17(r.t) << " method=" << r.method << " norm="
                  << fmt17(r.report.norm) << " mean_q=" << fmt17(r.report.mean_q)
                  << " mean_p=" << fmt17(r.report.mean_p) << "\n";
}

int run_command(const std::string& config_path, bool require_two) {
    const auto cfg = load_config(config_path);
    if (require_two && cfg.methods.size() != 2)
        throw opevo::ValidationError("compare needs exactly two methods in the config");
    const auto artifacts = opevo::execute_scenario(cfg);
    write_outputs(artifacts);
    print_summary(artifacts);
    return 0;
}

opevo::Rational parse_rational(const std::string& s) {
    return opevo::detail::rational_field(nlohmann::json(s), "value");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-method evolution toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "execute a scenario config");
    run->add_option("config", config_path, "scenario JSON")->required();

    auto* cmp = app.add_subcommand("compare", "execute a two-method scenario config");
    cmp->add_option("config", config_path, "scenario JSON")->required();

    std::string h_kind = "free", h_mass = "1", h_force = "1", h_omega = "1", h_lambda = "1";
    std::string h_op = "q";
    int h_order = 4;
    double h_hbar = 1.0;
    auto* heis = app.add_subcommand("heisenberg", "print a Heisenberg series");
    heis->add_option("--hamiltonian", h_kind,
                     "free | constant_force | harmonic | inverted_harmonic");
    heis->add_option("--mass", h_mass, "rational");
    heis->add_option("--force", h_force, "rational");
    heis->add_option("--omega", h_omega, "rational");
    heis->add_option("--lambda", h_lambda, "rational");
    heis->add_option("--hbar", h_hbar);
    heis->add_option("--op", h_op, "q | p");
    heis->add_option("--order", h_order);

    double c_lambda = 1.0, c_width = 0.5, c_tmax = 2.0;
    std::size_t c_samples = 8;
    opevo::ChaosOptions c_opts;
    std::string c_density, c_observables, c_summary;
    auto* chaos = app.add_subcommand("chaos-demo", "split a packet on an inverted oscillator");
    chaos->add_option("--lambda", c_lambda);
    chaos->add_option("--width", c_width);
    chaos->add_option("--tmax", c_tmax);
    chaos->add_option("--samples", c_samples);
    chaos->add_option("--edge", c_opts.edge_width);
    chaos->add_option("--mass", c_opts.mass);
    chaos->add_option("--points", c_opts.n_points);
    chaos->add_option("--box", c_opts.box_half_width);
    chaos->add_option("--steps-per-unit", c_opts.steps_per_unit_time);
    chaos->add_option("--density-csv", c_density);
    chaos->add_option("--observables-csv", c_observables);
    chaos->add_option("--summary-json", c_summary);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return run_command(config_path, false);
        if (cmp->parsed()) return run_command(config_path, true);
        if (heis->parsed()) {
            opevo::HamiltonianSpec h;
            if (h_kind == "free") {
                h = opevo::HamiltonianSpec::free(parse_rational(h_mass), h_hbar);
            } else if (h_kind == "constant_force") {
                h = opevo::HamiltonianSpec::constant_force(parse_rational(h_mass),
                                                           parse_rational(h_force), h_hbar);
            } else if (h_kind == "harmonic") {
                h = opevo::HamiltonianSpec::harmonic(parse_rational(h_mass),
                                                     parse_rational(h_omega), h_hbar);
            } else if (h_kind == "inverted_harmonic") {
                h = opevo::HamiltonianSpec::inverted_harmonic(parse_rational(h_mass),
                                                              parse_rational(h_lambda), h_hbar);
            } else {
                throw opevo::ValidationError("heisenberg: unknown Hamiltonian kind '" + h_kind +
                                             "'");
            }
            if (h_op.size() != 1)
                throw opevo::ValidationError("heisenberg: --op must be q or p");
            std::cout << opevo::heisenberg_print(h, h_op[0], h_order);
            return 0;
        }
        if (chaos->parsed()) {
            const auto res = opevo::chaos_demo(c_lambda, c_width, c_tmax, c_samples, c_opts);
            if (!c_density.empty()) write_file(c_density, res.artifacts.density_csv);
            if (!c_observables.empty()) write_file(c_observables, res.artifacts.observables_csv);
            if (!c_summary.empty()) write_file(c_summary, res.artifacts.metadata_json);
            using opevo::detail::fmt17;
            for (const auto& r : res.artifacts.observables_rows)
                std::cout << "t=" << fmt17(r.t) << " var_q=" << fmt17(r.report.var_q) << "\n";
            const auto& s = res.summary;
            if (s.onset_time >= 0.0)
                std::cout << "bimodal from t=" << fmt17(s.onset_time) << " ratio="
                          << fmt17(s.final_ratio) << " left=" << fmt17(s.left_mass)
                          << " right=" << fmt17(s.right_mass) << "\n";
            else
                std::cout << "no bimodality by t=" << fmt17(s.last_time) << "\n";
            if (s.truncated) {
                std::cout << "truncated: packet reached the box edge\n";
                return 3;
            }
            return 0;
        }
    } catch (const opevo::DegreeGuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 3;
    } catch (const opevo::OverflowGuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return 3;
    } catch (const opevo::ValidationError& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
