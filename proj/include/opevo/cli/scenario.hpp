#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "opevo/algebra/render.hpp"
#include "opevo/algebra/series.hpp"
#include "opevo/core/wavefunction.hpp"
#include "opevo/core/window.hpp"
#include "opevo/oracle/split_step.hpp"
#include "opevo/prop/fourier.hpp"
#include "opevo/prop/polynomial.hpp"
#include "opevo/prop/series_evolution.hpp"

namespace opevo {

inline constexpr const char* kToolVersion = "opevo 1.0.0";

// Markers recorded in run metadata whenever one of the re-derived formula
// forms participates in a run; each is documented in docs/derivations.md.
namespace flags {
inline constexpr const char* kConstantForceMomentumRate = "constant_force_momentum_rate";
inline constexpr const char* kConstantForceKernelTimeFactor = "constant_force_kernel_time_factor";
inline constexpr const char* kFreePolynomialWeight = "free_polynomial_weight";
inline constexpr const char* kHarmonicPolynomialWeight = "harmonic_polynomial_weight";
inline constexpr const char* kGaussianSimilarityScale = "gaussian_similarity_scale";
inline constexpr const char* kHarmonicKernelForm = "harmonic_kernel_form";
} // namespace flags

struct MethodSpec {
    enum class Kind { Fourier, Polynomial, OperatorSeries, Oracle };
    Kind kind = Kind::Fourier;
    std::size_t order = 6;    // OperatorSeries
    std::size_t steps = 4096; // Oracle (total, split across time segments)

    std::string label() const {
        switch (kind) {
            case Kind::Fourier: return "fourier";
            case Kind::Polynomial: return "polynomial";
            case Kind::OperatorSeries: return "operator_series(" + std::to_string(order) + ")";
            case Kind::Oracle: return "oracle(" + std::to_string(steps) + ")";
        }
        return "?";
    }
};

struct InitialStateSpec {
    enum class Kind { Gaussian, Polynomial, PlaneWavePacket };
    Kind kind = Kind::Gaussian;
    double center = 0.0;
    double width = 1.0;
    double k0 = 0.0;
    std::vector<std::complex<double>> coefficients; // Polynomial
    double window_half_width = 0.0;                 // 0: three eighths of the box
    double edge_width = 0.7;
};

struct OutputRequest {
    enum class Kind { DensityCsv, ObservablesCsv, ComparisonJson, MetadataJson };
    Kind kind = Kind::DensityCsv;
    std::string path;
};

struct ScenarioConfig {
    HamiltonianSpec hamiltonian; // hbar inside mirrors the top-level value
    InitialStateSpec initial_state;
    std::vector<MethodSpec> methods;
    std::size_t n_points = 0;
    double q_min = 0.0, q_max = 0.0;
    std::vector<double> times;
    double hbar = 1.0;
    std::vector<OutputRequest> outputs;
};

struct ObservablesRow {
    std::string method;
    double t = 0.0;
    ObservableReport report;
};

struct ComparisonRow {
    double t = 0.0;
    double l2 = 0.0;
    double fidelity = 0.0;
    double max_pointwise = 0.0;
};

struct RunArtifacts {
    std::vector<std::string> method_labels;
    std::vector<double> times;
    std::vector<std::vector<WaveFunction>> states; // [method][time]
    std::vector<ObservablesRow> observables_rows;
    std::vector<ComparisonRow> comparison_rows; // empty unless two methods
    std::vector<std::string> derivation_flags;  // sorted, unique
    double interior_half_width = 0.0;           // 0: comparisons span the grid
    std::string density_csv;
    std::string observables_csv;
    std::string comparison_json;
    std::string metadata_json;
    std::vector<OutputRequest> outputs;
};

namespace detail {

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline const nlohmann::json& field(const nlohmann::json& j, const char* key,
                                   const std::string& path) {
    if (!j.is_object()) throw ValidationError(path + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw ValidationError(path + "." + key + ": missing");
    return *it;
}

inline double double_field(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) throw ValidationError(path + ": expected a number");
    return j.get<double>();
}

inline std::size_t size_field(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ValidationError(path + ": expected a nonnegative integer");
    return static_cast<std::size_t>(j.get<long long>());
}

// Rationals accept integers, "p/q" strings, or floating values (taken at
// their exact binary expansion).
inline Rational rational_field(const nlohmann::json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) {
        Rational r;
        r.assign(j.get<double>());
        return r;
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            const auto slash = s.find('/');
            if (slash == std::string::npos)
                return Rational(boost::multiprecision::cpp_int(s));
            return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                            boost::multiprecision::cpp_int(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw ValidationError(path + ": cannot parse '" + s + "' as a rational");
        }
    }
    throw ValidationError(path + ": expected a number or a \"p/q\" string");
}

inline std::string rational_echo(const Rational& r) { return r.str(); }

} // namespace detail

inline ScenarioConfig parse_scenario(const nlohmann::json& j) {
    using detail::field;
    ScenarioConfig cfg;
    const std::string root = "scenario";
    if (!j.is_object()) throw ValidationError(root + ": expected an object");

    cfg.hbar = j.contains("hbar") ? detail::double_field(j["hbar"], root + ".hbar") : 1.0;
    if (!(cfg.hbar > 0.0)) throw ValidationError(root + ".hbar: must be positive");

    {
        const auto& h = field(j, "hamiltonian", root);
        const std::string hp = root + ".hamiltonian";
        const auto& kind = field(h, "kind", hp);
        if (!kind.is_string()) throw ValidationError(hp + ".kind: expected a string");
        const std::string ks = kind.get<std::string>();
        const Rational mass = h.contains("mass")
                                  ? detail::rational_field(h["mass"], hp + ".mass")
                                  : Rational(1);
        try {
            if (ks == "free") {
                cfg.hamiltonian = HamiltonianSpec::free(mass, cfg.hbar);
            } else if (ks == "constant_force") {
                cfg.hamiltonian = HamiltonianSpec::constant_force(
                    mass, detail::rational_field(field(h, "force", hp), hp + ".force"), cfg.hbar);
            } else if (ks == "harmonic") {
                cfg.hamiltonian = HamiltonianSpec::harmonic(
                    mass, detail::rational_field(field(h, "omega", hp), hp + ".omega"), cfg.hbar);
            } else if (ks == "inverted_harmonic") {
                cfg.hamiltonian = HamiltonianSpec::inverted_harmonic(
                    mass, detail::rational_field(field(h, "lambda", hp), hp + ".lambda"), cfg.hbar);
            } else {
                throw ValidationError(hp + ".kind: unknown kind '" + ks + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw ValidationError(hp + ": " + e.what());
        }
    }

    {
        const auto& s = field(j, "initial_state", root);
        const std::string sp = root + ".initial_state";
        const auto& kind = field(s, "kind", sp);
        if (!kind.is_string()) throw ValidationError(sp + ".kind: expected a string");
        const std::string ks = kind.get<std::string>();
        auto opt = [&](const char* key, double fallback) {
            return s.contains(key) ? detail::double_field(s[key], sp + "." + key) : fallback;
        };
        if (ks == "gaussian") {
            cfg.initial_state.kind = InitialStateSpec::Kind::Gaussian;
            cfg.initial_state.center = opt("center", 0.0);
            cfg.initial_state.width = opt("width", 1.0);
            cfg.initial_state.k0 = opt("k0", 0.0);
            if (!(cfg.initial_state.width > 0.0))
                throw ValidationError(sp + ".width: must be positive");
        } else if (ks == "polynomial") {
            cfg.initial_state.kind = InitialStateSpec::Kind::Polynomial;
            const auto& arr = field(s, "coefficients", sp);
            if (!arr.is_array() || arr.empty())
                throw ValidationError(sp + ".coefficients: expected a nonempty array");
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const auto& c = arr[i];
                const std::string cp = sp + ".coefficients[" + std::to_string(i) + "]";
                if (c.is_number()) {
                    cfg.initial_state.coefficients.emplace_back(c.get<double>(), 0.0);
                } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
                    cfg.initial_state.coefficients.emplace_back(c[0].get<double>(),
                                                                c[1].get<double>());
                } else {
                    throw ValidationError(cp + ": expected a number or [re, im]");
                }
            }
            cfg.initial_state.window_half_width = opt("window_half_width", 0.0);
            cfg.initial_state.edge_width = opt("edge_width", 0.7);
        } else if (ks == "plane_wave_packet") {
            cfg.initial_state.kind = InitialStateSpec::Kind::PlaneWavePacket;
            cfg.initial_state.k0 = opt("k0", 0.0);
            cfg.initial_state.window_half_width = opt("window_half_width", 0.0);
            cfg.initial_state.edge_width = opt("edge_width", 0.7);
        } else {
            throw ValidationError(sp + ".kind: unknown kind '" + ks + "'");
        }
    }

    {
        const auto& arr = field(j, "methods", root);
        const std::string mp = root + ".methods";
        if (!arr.is_array() || arr.empty() || arr.size() > 2)
            throw ValidationError(mp + ": expected an array of one or two methods");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ip = mp + "[" + std::to_string(i) + "]";
            const auto& kind = field(arr[i], "kind", ip);
            if (!kind.is_string()) throw ValidationError(ip + ".kind: expected a string");
            const std::string ks = kind.get<std::string>();
            MethodSpec m;
            if (ks == "fourier") {
                m.kind = MethodSpec::Kind::Fourier;
            } else if (ks == "polynomial") {
                m.kind = MethodSpec::Kind::Polynomial;
            } else if (ks == "operator_series") {
                m.kind = MethodSpec::Kind::OperatorSeries;
                if (arr[i].contains("order"))
                    m.order = detail::size_field(arr[i]["order"], ip + ".order");
            } else if (ks == "oracle") {
                m.kind = MethodSpec::Kind::Oracle;
                if (arr[i].contains("steps"))
                    m.steps = detail::size_field(arr[i]["steps"], ip + ".steps");
                if (m.steps < 1) throw ValidationError(ip + ".steps: must be at least 1");
            } else {
                throw ValidationError(ip + ".kind: unknown kind '" + ks + "'");
            }
            cfg.methods.push_back(m);
        }
    }

    {
        const auto& g = field(j, "grid", root);
        const std::string gp = root + ".grid";
        cfg.n_points = detail::size_field(field(g, "n_points", gp), gp + ".n_points");
        cfg.q_min = detail::double_field(field(g, "q_min", gp), gp + ".q_min");
        cfg.q_max = detail::double_field(field(g, "q_max", gp), gp + ".q_max");
        try {
            (void)build_grid(cfg.n_points, cfg.q_min, cfg.q_max);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(gp + ": " + e.what());
        }
    }

    {
        const auto& arr = field(j, "times", root);
        const std::string tp = root + ".times";
        if (!arr.is_array() || arr.empty()) throw ValidationError(tp + ": expected a nonempty array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_number())
                throw ValidationError(tp + "[" + std::to_string(i) + "]: expected a number");
            cfg.times.push_back(arr[i].get<double>());
        }
        for (std::size_t i = 1; i < cfg.times.size(); ++i)
            if (!(cfg.times[i] > cfg.times[i - 1]))
                throw ValidationError(tp + ": must be strictly ascending");
    }

    if (j.contains("outputs")) {
        const auto& arr = j["outputs"];
        const std::string op = root + ".outputs";
        if (!arr.is_array()) throw ValidationError(op + ": expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string ip = op + "[" + std::to_string(i) + "]";
            const auto& kind = field(arr[i], "kind", ip);
            const auto& path = field(arr[i], "path", ip);
            if (!kind.is_string() || !path.is_string())
                throw ValidationError(ip + ": kind and path must be strings");
            const std::string ks = kind.get<std::string>();
            OutputRequest r;
            if (ks == "density_csv") r.kind = OutputRequest::Kind::DensityCsv;
            else if (ks == "observables_csv") r.kind = OutputRequest::Kind::ObservablesCsv;
            else if (ks == "comparison_json") r.kind = OutputRequest::Kind::ComparisonJson;
            else if (ks == "metadata_json") r.kind = OutputRequest::Kind::MetadataJson;
            else throw ValidationError(ip + ".kind: unknown kind '" + ks + "'");
            r.path = path.get<std::string>();
            cfg.outputs.push_back(r);
        }
    }

    return cfg;
}

namespace detail {

// Method/Hamiltonian/state compatibility, checked before any compute.
inline void validate_scenario(const ScenarioConfig& cfg) {
    const auto kind = cfg.hamiltonian.kind;
    if (kind == HamiltonianKind::Custom)
        throw ValidationError("scenario.hamiltonian: custom Hamiltonians are not runnable here");
    const bool poly_initial = cfg.initial_state.kind == InitialStateSpec::Kind::Polynomial;
    bool has_comparison_output = false;
    for (const auto& o : cfg.outputs)
        has_comparison_output |= o.kind == OutputRequest::Kind::ComparisonJson;
    if (has_comparison_output && cfg.methods.size() != 2)
        throw ValidationError("scenario.outputs: comparison_json needs exactly two methods");

    for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
        const std::string mp = "scenario.methods[" + std::to_string(i) + "]";
        switch (cfg.methods[i].kind) {
            case MethodSpec::Kind::Fourier:
                if (kind == HamiltonianKind::InvertedHarmonic)
                    throw ValidationError(
                        mp + ": no closed fourier form for the inverted oscillator; use the "
                             "oracle method");
                break;
            case MethodSpec::Kind::Polynomial:
                if (!poly_initial)
                    throw ValidationError(mp + ": polynomial method needs a polynomial state");
                if (kind == HamiltonianKind::InvertedHarmonic)
                    throw ValidationError(mp + ": polynomial evolution covers free, "
                                               "constant-force, and harmonic kinds only");
                break;
            case MethodSpec::Kind::OperatorSeries:
                if (cfg.methods[i].order > kDefaultDegreeGuard)
                    throw ValidationError(mp + ".order: exceeds the degree guard");
                break;
            case MethodSpec::Kind::Oracle:
                break;
        }
    }
}

inline double resolve_window_half(const InitialStateSpec& s, const Grid1D& g) {
    if (s.window_half_width > 0.0) return s.window_half_width;
    return 0.375 * 0.5 * (g.q_max - g.q_min);
}

inline WaveFunction initial_grid_state(const ScenarioConfig& cfg, const Grid1D& grid) {
    const auto& s = cfg.initial_state;
    switch (s.kind) {
        case InitialStateSpec::Kind::Gaussian: {
            try {
                return make_gaussian(grid, s.center, s.width, s.k0, cfg.hbar);
            } catch (const std::invalid_argument& e) {
                throw ValidationError(std::string("scenario.initial_state: ") + e.what());
            }
        }
        case InitialStateSpec::Kind::PlaneWavePacket: {
            const double half = resolve_window_half(s, grid);
            const auto w = plateau_window(grid, half, s.edge_width);
            WaveFunction psi;
            psi.grid = grid;
            psi.representation = Representation::Position;
            psi.hbar = cfg.hbar;
            psi.amplitudes.resize(grid.n_points);
            for (std::size_t j = 0; j < grid.n_points; ++j) {
                const double q = grid.q_at(j);
                psi.amplitudes[j] = w[j] * std::exp(std::complex<double>(0.0, s.k0 * q));
            }
            const double n = norm(psi);
            for (auto& z : psi.amplitudes) z /= n;
            return psi;
        }
        case InitialStateSpec::Kind::Polynomial: {
            const double half = resolve_window_half(s, grid);
            const auto w = plateau_window(grid, half, s.edge_width);
            PolynomialState p{s.coefficients, cfg.hbar,
                              static_cast<double>(cfg.hamiltonian.mass)};
            WaveFunction psi;
            psi.grid = grid;
            psi.representation = Representation::Position;
            psi.hbar = cfg.hbar;
            psi.amplitudes.resize(grid.n_points);
            for (std::size_t j = 0; j < grid.n_points; ++j)
                psi.amplitudes[j] = w[j] * p.evaluate(grid.q_at(j));
            return psi;
        }
    }
    throw std::logic_error("initial_grid_state: unknown kind");
}

inline ComparisonRow restricted_compare(const WaveFunction& a, const WaveFunction& b,
                                        double interior_half) {
    ComparisonRow row;
    double d2 = 0.0, na2 = 0.0, nb2 = 0.0;
    std::complex<double> overlap{0.0, 0.0};
    for (std::size_t j = 0; j < a.grid.n_points; ++j) {
        if (std::abs(a.grid.q_at(j)) > interior_half) continue;
        const auto diff = a.amplitudes[j] - b.amplitudes[j];
        d2 += std::norm(diff);
        na2 += std::norm(a.amplitudes[j]);
        nb2 += std::norm(b.amplitudes[j]);
        overlap += std::conj(a.amplitudes[j]) * b.amplitudes[j];
        row.max_pointwise = std::max(row.max_pointwise, std::abs(diff));
    }
    row.l2 = std::sqrt(d2 * a.grid.dq);
    const double denom = std::sqrt(na2 * nb2);
    row.fidelity = denom > 0.0 ? std::abs(overlap) / denom : 0.0;
    return row;
}

inline std::string render_density_csv(const RunArtifacts& a) {
    std::string out = "method,t,q,re,im,density\n";
    for (std::size_t m = 0; m < a.method_labels.size(); ++m) {
        for (std::size_t i = 0; i < a.times.size(); ++i) {
            if (i >= a.states[m].size()) continue;
            const auto& psi = a.states[m][i];
            for (std::size_t j = 0; j < psi.grid.n_points; ++j) {
                out += a.method_labels[m];
                out += ',';
                out += fmt17(a.times[i]);
                out += ',';
                out += fmt17(psi.grid.q_at(j));
                out += ',';
                out += fmt17(psi.amplitudes[j].real());
                out += ',';
                out += fmt17(psi.amplitudes[j].imag());
                out += ',';
                out += fmt17(std::norm(psi.amplitudes[j]));
                out += '\n';
            }
        }
    }
    return out;
}

inline std::string render_observables_csv(const RunArtifacts& a) {
    std::string out = "method,t,norm,mean_q,mean_p,var_q,var_p\n";
    for (const auto& row : a.observables_rows) {
        out += row.method;
        out += ',';
        out += fmt17(row.t);
        out += ',';
        out += fmt17(row.report.norm);
        out += ',';
        out += fmt17(row.report.mean_q);
        out += ',';
        out += fmt17(row.report.mean_p);
        out += ',';
        out += fmt17(row.report.var_q);
        out += ',';
        out += fmt17(row.report.var_p);
        out += '\n';
    }
    return out;
}

inline std::string render_comparison_json(const RunArtifacts& a) {
    nlohmann::ordered_json j;
    j["method_a"] = a.method_labels.size() > 0 ? a.method_labels[0] : "";
    j["method_b"] = a.method_labels.size() > 1 ? a.method_labels[1] : "";
    if (a.interior_half_width > 0.0) j["interior_half_width"] = a.interior_half_width;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : a.comparison_rows) {
        nlohmann::ordered_json row;
        row["t"] = r.t;
        row["l2"] = r.l2;
        row["fidelity"] = r.fidelity;
        row["max_pointwise"] = r.max_pointwise;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

inline nlohmann::ordered_json echo_config(const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json h;
    switch (cfg.hamiltonian.kind) {
        case HamiltonianKind::Free: h["kind"] = "free"; break;
        case HamiltonianKind::ConstantForce:
            h["kind"] = "constant_force";
            h["force"] = rational_echo(cfg.hamiltonian.force);
            break;
        case HamiltonianKind::Harmonic:
            h["kind"] = "harmonic";
            h["omega"] = rational_echo(cfg.hamiltonian.omega);
            break;
        case HamiltonianKind::InvertedHarmonic:
            h["kind"] = "inverted_harmonic";
            h["lambda"] = rational_echo(cfg.hamiltonian.lambda);
            break;
        case HamiltonianKind::Custom: h["kind"] = "custom"; break;
    }
    h["mass"] = rational_echo(cfg.hamiltonian.mass);
    j["hamiltonian"] = h;

    nlohmann::ordered_json s;
    switch (cfg.initial_state.kind) {
        case InitialStateSpec::Kind::Gaussian:
            s["kind"] = "gaussian";
            s["center"] = cfg.initial_state.center;
            s["width"] = cfg.initial_state.width;
            s["k0"] = cfg.initial_state.k0;
            break;
        case InitialStateSpec::Kind::Polynomial: {
            s["kind"] = "polynomial";
            auto arr = nlohmann::ordered_json::array();
            for (const auto& c : cfg.initial_state.coefficients)
                arr.push_back({c.real(), c.imag()});
            s["coefficients"] = arr;
            s["window_half_width"] = cfg.initial_state.window_half_width;
            s["edge_width"] = cfg.initial_state.edge_width;
            break;
        }
        case InitialStateSpec::Kind::PlaneWavePacket:
            s["kind"] = "plane_wave_packet";
            s["k0"] = cfg.initial_state.k0;
            s["window_half_width"] = cfg.initial_state.window_half_width;
            s["edge_width"] = cfg.initial_state.edge_width;
            break;
    }
    j["initial_state"] = s;

    auto methods = nlohmann::ordered_json::array();
    for (const auto& m : cfg.methods) {
        nlohmann::ordered_json mm;
        switch (m.kind) {
            case MethodSpec::Kind::Fourier: mm["kind"] = "fourier"; break;
            case MethodSpec::Kind::Polynomial: mm["kind"] = "polynomial"; break;
            case MethodSpec::Kind::OperatorSeries:
                mm["kind"] = "operator_series";
                mm["order"] = m.order;
                break;
            case MethodSpec::Kind::Oracle:
                mm["kind"] = "oracle";
                mm["steps"] = m.steps;
                break;
        }
        methods.push_back(mm);
    }
    j["methods"] = methods;

    j["grid"] = {{"n_points", cfg.n_points}, {"q_min", cfg.q_min}, {"q_max", cfg.q_max}};
    j["times"] = cfg.times;
    j["hbar"] = cfg.hbar;

    auto outs = nlohmann::ordered_json::array();
    for (const auto& o : cfg.outputs) {
        const char* k = "";
        switch (o.kind) {
            case OutputRequest::Kind::DensityCsv: k = "density_csv"; break;
            case OutputRequest::Kind::ObservablesCsv: k = "observables_csv"; break;
            case OutputRequest::Kind::ComparisonJson: k = "comparison_json"; break;
            case OutputRequest::Kind::MetadataJson: k = "metadata_json"; break;
        }
        outs.push_back({{"kind", k}, {"path", o.path}});
    }
    j["outputs"] = outs;
    return j;
}

inline std::string render_metadata_json(const ScenarioConfig& cfg, const RunArtifacts& a) {
    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config"] = echo_config(cfg);
    j["derivation_flags"] = a.derivation_flags;
    if (a.interior_half_width > 0.0) j["interior_half_width"] = a.interior_half_width;
    auto notes = nlohmann::ordered_json::array();
    for (std::size_t m = 0; m < a.method_labels.size(); ++m)
        for (std::size_t i = 0; i < a.times.size() && i < a.states[m].size(); ++i)
            for (const auto& w : a.states[m][i].warnings)
                notes.push_back({{"method", a.method_labels[m]},
                                 {"t", a.times[i]},
                                 {"warning", w}});
    j["notes"] = notes;
    return j.dump(2) + "\n";
}

} // namespace detail

inline RunArtifacts execute_scenario(const ScenarioConfig& cfg) {
    detail::validate_scenario(cfg);
    const Grid1D grid = build_grid(cfg.n_points, cfg.q_min, cfg.q_max);
    const auto& h = cfg.hamiltonian;
    const double mass = static_cast<double>(h.mass);
    const bool poly_initial = cfg.initial_state.kind == InitialStateSpec::Kind::Polynomial;

    RunArtifacts out;
    out.times = cfg.times;
    out.outputs = cfg.outputs;
    if (poly_initial)
        out.interior_half_width = 0.3 * detail::resolve_window_half(cfg.initial_state, grid);

    std::set<std::string> flag_set;
    for (const auto& m : cfg.methods) {
        const bool closed_form = m.kind == MethodSpec::Kind::Fourier ||
                                 m.kind == MethodSpec::Kind::Polynomial;
        if (h.kind == HamiltonianKind::ConstantForce && closed_form)
            flag_set.insert(flags::kConstantForceKernelTimeFactor);
        if (m.kind == MethodSpec::Kind::Polynomial) {
            if (h.kind == HamiltonianKind::Free || h.kind == HamiltonianKind::ConstantForce)
                flag_set.insert(flags::kFreePolynomialWeight);
            if (h.kind == HamiltonianKind::Harmonic) {
                flag_set.insert(flags::kHarmonicPolynomialWeight);
                flag_set.insert(flags::kGaussianSimilarityScale);
                flag_set.insert(flags::kHarmonicKernelForm);
            }
        }
    }
    out.derivation_flags.assign(flag_set.begin(), flag_set.end());

    WaveFunction psi0;
    const bool need_grid_state = std::any_of(
        cfg.methods.begin(), cfg.methods.end(), [&](const MethodSpec& m) {
            return m.kind != MethodSpec::Kind::Polynomial &&
                   !(m.kind == MethodSpec::Kind::OperatorSeries && poly_initial);
        });
    if (need_grid_state) psi0 = detail::initial_grid_state(cfg, grid);

    PolynomialState p0;
    if (poly_initial) p0 = PolynomialState{cfg.initial_state.coefficients, cfg.hbar, mass};

    for (const auto& m : cfg.methods) {
        out.method_labels.push_back(m.label());
        std::vector<WaveFunction> states;
        switch (m.kind) {
            case MethodSpec::Kind::Fourier: {
                for (double t : cfg.times) {
                    switch (h.kind) {
                        case HamiltonianKind::Free:
                            states.push_back(evolve_free_fourier(
                                psi0, t, DispersionRelation::nonrelativistic(mass, cfg.hbar)));
                            break;
                        case HamiltonianKind::ConstantForce:
                            states.push_back(evolve_constant_force_fourier(
                                psi0, t, static_cast<double>(h.force), mass));
                            break;
                        case HamiltonianKind::Harmonic:
                            states.push_back(evolve_harmonic_fourier(
                                psi0, t, static_cast<double>(h.omega), mass));
                            break;
                        default:
                            throw std::logic_error("execute_scenario: unreachable fourier kind");
                    }
                }
                break;
            }
            case MethodSpec::Kind::Polynomial: {
                HarmonicTruncation trunc;
                trunc.window_half_width = out.interior_half_width;
                for (double t : cfg.times) {
                    const auto r = evolve_polynomial_state(p0, h, t, trunc);
                    states.push_back(r.evaluate(grid));
                }
                break;
            }
            case MethodSpec::Kind::OperatorSeries: {
                if (poly_initial) {
                    SeriesEvolutionOptions opts;
                    opts.window_half_width = detail::resolve_window_half(cfg.initial_state, grid);
                    for (double t : cfg.times)
                        states.push_back(
                            evolve_by_operator_series(p0, grid, h, t, m.order, opts));
                } else {
                    for (double t : cfg.times)
                        states.push_back(evolve_by_operator_series(psi0, h, t, m.order));
                }
                break;
            }
            case MethodSpec::Kind::Oracle: {
                const auto v = potential_grid(h, grid);
                double span = 0.0, prev = 0.0;
                for (double t : cfg.times) {
                    span += std::abs(t - prev);
                    prev = t;
                }
                WaveFunction cur = psi0;
                prev = 0.0;
                for (double t : cfg.times) {
                    const double seg = t - prev;
                    if (seg != 0.0) {
                        const auto seg_steps = static_cast<std::size_t>(std::max(
                            1.0, std::ceil(static_cast<double>(m.steps) * std::abs(seg) / span)));
                        cur = split_step_evolve(cur, v, seg, seg_steps, mass);
                    }
                    states.push_back(cur);
                    prev = t;
                }
                break;
            }
        }
        out.states.push_back(std::move(states));
    }

    for (std::size_t mi = 0; mi < out.method_labels.size(); ++mi)
        for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
            ObservablesRow row;
            row.method = out.method_labels[mi];
            row.t = cfg.times[ti];
            row.report = observables(out.states[mi][ti]);
            out.observables_rows.push_back(row);
        }

    if (cfg.methods.size() == 2) {
        for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
            ComparisonRow row;
            if (out.interior_half_width > 0.0) {
                row = detail::restricted_compare(out.states[0][ti], out.states[1][ti],
                                                 out.interior_half_width);
            } else {
                const auto rep = compare(out.states[0][ti], out.states[1][ti]);
                row.l2 = rep.l2_distance;
                row.fidelity = rep.fidelity;
                row.max_pointwise = rep.max_pointwise;
            }
            row.t = cfg.times[ti];
            out.comparison_rows.push_back(row);
        }
    }

    out.density_csv = detail::render_density_csv(out);
    out.observables_csv = detail::render_observables_csv(out);
    if (!out.comparison_rows.empty()) out.comparison_json = detail::render_comparison_json(out);
    out.metadata_json = detail::render_metadata_json(cfg, out);
    return out;
}

// Canonical text form of a Heisenberg series, stable across runs.
inline std::string heisenberg_print(const HamiltonianSpec& h, char op, int order) {
    if (op != 'q' && op != 'p')
        throw ValidationError("heisenberg_print: operator must be 'q' or 'p'");
    if (order < 0 || static_cast<std::size_t>(order) > kDefaultDegreeGuard)
        throw DegreeGuardError("heisenberg_print: order exceeds the degree guard");
    const auto series = heisenberg_series(
        op == 'q' ? ExactPolynomial::q() : ExactPolynomial::p(), h, order);
    std::string out = "H = " + render(h.operator_polynomial()) +
                      ", hbar = " + detail::fmt17(h.hbar) + "\n";
    out += render(series, std::string(1, op));
    if (h.kind == HamiltonianKind::ConstantForce && op == 'p')
        out += "note: the growth rate of p is the full applied force F "
               "[" + std::string(flags::kConstantForceMomentumRate) + "]\n";
    return out;
}

// ---------------------------------------------------------------------------
// Packet splitting on an inverted oscillator.
//
// The initial state is a real symmetric flat-top packet (tanh edges), not a
// Gaussian: quadratic Hamiltonians map Gaussians to Gaussians, so a Gaussian
// density stays single-peaked forever and could never split. The flat-top's
// edge waves steepen into two symmetric horns that outgrow the center.
// ---------------------------------------------------------------------------

struct ChaosOptions {
    double edge_width = 0.06;
    double mass = 40.0;
    double hbar = 1.0;
    std::size_t n_points = 8192;
    double box_half_width = 40.0;
    double steps_per_unit_time = 2000.0;
};

struct ChaosSummary {
    double onset_time = -1.0; // first sampled time with a bimodal density
    double final_ratio = 1.0; // peak density over center density, last sample
    double final_peak_offset = 0.0;
    double left_mass = 0.5;
    double right_mass = 0.5;
    double max_parity_asymmetry = 0.0;
    double max_var_rel_error = 0.0; // against the cosh/sinh moment closed form
    bool truncated = false;
    double last_time = 0.0;
};

struct ChaosResult {
    RunArtifacts artifacts;
    ChaosSummary summary;
};

namespace detail {

inline bool density_bimodal(const std::vector<double>& rho, std::size_t jc) {
    std::size_t jmax = 0;
    for (std::size_t j = 1; j < rho.size(); ++j)
        if (rho[j] > rho[jmax]) jmax = j;
    const auto off = jmax > jc ? jmax - jc : jc - jmax;
    return off > 5 && rho[jmax] > 1.05 * rho[jc] && rho[jc] <= rho[jc - 1] &&
           rho[jc] <= rho[jc + 1];
}

} // namespace detail

inline ChaosResult chaos_demo(double lambda, double width, double t_max, std::size_t samples,
                              const ChaosOptions& opts = {}) {
    if (!(lambda > 0.0)) throw ValidationError("chaos_demo: lambda must be positive");
    if (!(width > 0.0)) throw ValidationError("chaos_demo: width must be positive");
    if (!(t_max > 0.0)) throw ValidationError("chaos_demo: t_max must be positive");
    if (samples < 1) throw ValidationError("chaos_demo: need at least one sample");
    if (!(width + 6.0 * opts.edge_width < 0.25 * opts.box_half_width))
        throw ValidationError("chaos_demo: packet too wide for the box");

    const Grid1D grid = build_grid(opts.n_points, -opts.box_half_width, opts.box_half_width);
    const double m = opts.mass;

    WaveFunction psi;
    psi.grid = grid;
    psi.representation = Representation::Position;
    psi.hbar = opts.hbar;
    psi.amplitudes.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j) {
        const double q = grid.q_at(j);
        psi.amplitudes[j] = 0.5 * (std::tanh((q + width) / opts.edge_width) -
                                   std::tanh((q - width) / opts.edge_width));
    }
    const double n0 = norm(psi);
    for (auto& z : psi.amplitudes) z /= n0;

    const auto v = make_potential(
        grid, [m, lambda](double q) { return -0.5 * m * lambda * lambda * q * q; });
    const auto obs0 = observables(psi);
    const double vq0 = obs0.var_q, vp0 = obs0.var_p;
    const std::size_t jc = grid.n_points / 2;
    const std::size_t edge_cells = grid.n_points / 20;

    ChaosResult res;
    auto& a = res.artifacts;
    a.method_labels.push_back("oracle");
    a.states.emplace_back();
    auto record = [&](double t, const WaveFunction& state) {
        a.times.push_back(t);
        a.states[0].push_back(state);
        ObservablesRow row;
        row.method = "oracle";
        row.t = t;
        row.report = observables(state);
        a.observables_rows.push_back(row);

        std::vector<double> rho(grid.n_points);
        for (std::size_t j = 0; j < grid.n_points; ++j) rho[j] = std::norm(state.amplitudes[j]);

        double left = 0.0, right = 0.0;
        for (std::size_t j = 0; j < jc; ++j) left += rho[j];
        for (std::size_t j = jc + 1; j < grid.n_points; ++j) right += rho[j];
        left = (left + 0.5 * rho[jc]) * grid.dq;
        right = (right + 0.5 * rho[jc]) * grid.dq;
        res.summary.left_mass = left;
        res.summary.right_mass = right;
        res.summary.max_parity_asymmetry =
            std::max(res.summary.max_parity_asymmetry, std::abs(right - left));

        const double s = std::sinh(lambda * t), c = std::cosh(lambda * t);
        const double pred = vq0 * c * c + vp0 * s * s / (m * lambda * m * lambda);
        res.summary.max_var_rel_error =
            std::max(res.summary.max_var_rel_error, std::abs(row.report.var_q - pred) / pred);

        std::size_t jmax = 0;
        for (std::size_t j = 1; j < rho.size(); ++j)
            if (rho[j] > rho[jmax]) jmax = j;
        res.summary.final_ratio = rho[jc] > 0.0 ? rho[jmax] / rho[jc] : 0.0;
        res.summary.final_peak_offset = std::abs(grid.q_at(jmax));
        if (res.summary.onset_time < 0.0 && t > 0.0 && detail::density_bimodal(rho, jc))
            res.summary.onset_time = t;
        res.summary.last_time = t;

        double edge_mass = 0.0;
        for (std::size_t j = 0; j < edge_cells; ++j)
            edge_mass += (rho[j] + rho[grid.n_points - 1 - j]) * grid.dq;
        return edge_mass > 1e-8;
    };

    record(0.0, psi);
    WaveFunction cur = psi;
    const double dt = t_max / static_cast<double>(samples);
    const auto seg_steps =
        static_cast<std::size_t>(std::max(1.0, std::ceil(opts.steps_per_unit_time * dt)));
    for (std::size_t i = 1; i <= samples; ++i) {
        cur = split_step_evolve(cur, v, dt, seg_steps, m);
        if (record(dt * static_cast<double>(i), cur)) {
            res.summary.truncated = true;
            cur.warnings.push_back("chaos_demo: packet reached the box edge; run truncated");
            a.states[0].back() = cur;
            break;
        }
    }

    a.density_csv = detail::render_density_csv(a);
    a.observables_csv = detail::render_observables_csv(a);

    nlohmann::ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config"] = {{"lambda", lambda},
                   {"width", width},
                   {"t_max", t_max},
                   {"samples", samples},
                   {"edge_width", opts.edge_width},
                   {"mass", opts.mass},
                   {"hbar", opts.hbar},
                   {"n_points", opts.n_points},
                   {"box_half_width", opts.box_half_width},
                   {"steps_per_unit_time", opts.steps_per_unit_time}};
    j["summary"] = {{"onset_time", res.summary.onset_time},
                    {"final_ratio", res.summary.final_ratio},
                    {"final_peak_offset", res.summary.final_peak_offset},
                    {"left_mass", res.summary.left_mass},
                    {"right_mass", res.summary.right_mass},
                    {"max_parity_asymmetry", res.summary.max_parity_asymmetry},
                    {"max_var_rel_error", res.summary.max_var_rel_error},
                    {"truncated", res.summary.truncated},
                    {"last_time", res.summary.last_time}};
    j["derivation_flags"] = nlohmann::ordered_json::array();
    a.metadata_json = j.dump(2) + "\n";
    return res;
}

} // namespace opevo
