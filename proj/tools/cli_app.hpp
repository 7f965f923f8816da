#pragma once

// Command-line front end. `run` takes the arguments after the program name and
// writes the report to `out`, diagnostics to `err`; its return value is the
// process exit status.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "milnor/report.hpp"

namespace milnor::cli {

enum Exit : int { Ok = 0, InputError = 1, NegativeVerdict = 2, InternalFailure = 3, NumericalFinding = 4 };

inline int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotNegativeDefinite:
        case ErrorCode::NotMilnorFillable:
            return NegativeVerdict;
        case ErrorCode::SamplingFailed:
        case ErrorCode::DegenerateTangent:
        case ErrorCode::SingularMetric:
        case ErrorCode::ZeroGradient:
        case ErrorCode::OnBinding:
        case ErrorCode::ConeViolation:
            return NumericalFinding;
        case ErrorCode::IterationCapExceeded:
        case ErrorCode::NonIntegralSolution:
        case ErrorCode::NonEffectiveSolution:
        case ErrorCode::AllZero:
            return InternalFailure;
        default:
            return InputError;
    }
}

struct Options {
    std::string format = "text";
    std::string file;
    bool oracle = false;
    std::int64_t bound = 40;
    std::string emit = "text";
    std::string check;
    std::string hypersurface;
    std::optional<std::size_t> ambient;
    std::string map;
    std::string f;
    double epsilon = 0.01;
    std::optional<double> eta;
    double c = 1.0;
    std::size_t samples = 200;
    std::size_t mesh = 10000;
    std::uint64_t seed = 0;
};

constexpr std::size_t levi_trials = 10;
constexpr double cone_tolerance = 1e-3;
constexpr double reeb_alpha_tol_chart = 1e-9;
constexpr double reeb_alpha_tol_hypersurface = 1e-6;
constexpr double reeb_omega_tol = 1e-8;
constexpr double fd_tol = 1e-5;
constexpr double projection_tol = 1e-8;
constexpr double identity_tol = 1e-6;
constexpr double identity_tol_unscaled = 1e-12;
constexpr double gradient_tol = 1e-8;

class Failure : public std::runtime_error {
public:
    Failure(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

inline std::vector<std::string> split_map(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (const char ch : text) {
        if (ch == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += ch;
        }
    }
    parts.push_back(current);
    return parts;
}

inline contact::VarietyModel build_variety(const Options& o) {
    const bool hyper = !o.hypersurface.empty();
    if (hyper == o.ambient.has_value()) throw Failure(InputError, "exactly one of --hypersurface and --ambient is required");
    if (hyper) {
        if (!o.map.empty()) throw Failure(InputError, "--map applies only with --ambient");
        const std::size_t n = std::max<std::size_t>(contact::variables_mentioned(o.hypersurface), 2);
        return contact::VarietyModel::hypersurface(contact::parse_polynomial(o.hypersurface, n));
    }
    const std::size_t n = *o.ambient;
    if (n == 0) throw Failure(InputError, "--ambient must be positive");
    std::vector<contact::Polynomial> components;
    if (!o.map.empty()) {
        for (const auto& part : split_map(o.map)) components.push_back(contact::parse_polynomial(part, n));
    }
    return contact::VarietyModel::smooth_chart(n, std::move(components));
}

inline contact::Polynomial required_f(const Options& o, const contact::VarietyModel& v) {
    if (o.f.empty()) throw Failure(InputError, "--f is required for this check");
    return contact::parse_polynomial(o.f, v.chart_dim());
}

inline Json contact_config(const Options& o, const contact::VarietyModel& v) {
    Json config{{"check", o.check}, {"variety", v.describe()}};
    if (!o.hypersurface.empty()) config["hypersurface"] = o.hypersurface;
    if (o.ambient) {
        config["ambient"] = *o.ambient;
        config["map"] = o.map.empty() ? "identity" : o.map;
    }
    if (!o.f.empty()) config["f"] = o.f;
    config["epsilon"] = o.epsilon;
    config["eta"] = o.eta ? Json(*o.eta) : Json("default");
    config["c"] = o.c;
    config["samples"] = o.samples;
    config["mesh"] = o.mesh;
    config["seed"] = o.seed;
    config["format"] = o.format;
    return config;
}

struct Outcome {
    Json body;
    int code = Ok;
};

inline Outcome contact_spsh(const Options& o, const contact::VarietyModel& v) {
    const auto samples = contact::sample_points(v, o.epsilon, o.samples, o.seed);
    const auto r = contact::check_spsh(v, samples, levi_trials, o.seed);
    Json body = contact::to_json(r);
    const bool pass = r.min_quotient > 0.0 && r.min_eigenvalue > 0.0;
    body["tolerances"] = Json{{"certified_if", "min_levi_quotient > 0 and min_metric_eigenvalue > 0"}};
    body["certified"] = pass;
    return {body, pass ? Ok : NumericalFinding};
}

inline Outcome contact_reeb(const Options& o, const contact::VarietyModel& v) {
    const auto samples = contact::sample_points(v, o.epsilon, o.samples, o.seed);
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> normal;
    double alpha = 0.0, omega = 0.0, tangency = 0.0, fd = 0.0, projection = 0.0;
    for (const auto& s : samples) {
        const auto contract = contact::reeb_contract(v, s);
        alpha = std::max(alpha, contract.alpha_residual);
        omega = std::max(omega, contract.omega_max);
        tangency = std::max(tangency, contract.tangency);
        fd = std::max(fd, contact::omega_fd_deviation(v, s, contact::eval_forms(v, s)));
        contact::VectorC w(s.tangent_basis.cols());
        for (Eigen::Index j = 0; j < w.size(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            w(j) = contact::Complex(re, im);
        }
        const auto p = contact::projection_residuals(v, s, w);
        projection = std::max({projection, p.orthogonality, p.d_rho, p.d_c_rho, p.idempotence});
    }
    const double alpha_tol = v.kind() == contact::VarietyModel::Kind::SmoothChart ? reeb_alpha_tol_chart : reeb_alpha_tol_hypersurface;
    const bool pass = alpha <= alpha_tol && omega <= reeb_omega_tol && tangency <= reeb_omega_tol && fd <= fd_tol &&
                      projection <= projection_tol;
    Json body{{"samples", samples.size()},
              {"max_alpha_reeb_minus_one", alpha},
              {"max_omega_reeb_level", omega},
              {"max_reeb_normal_component", tangency},
              {"max_omega_fd_deviation", fd},
              {"max_xi_projection_residual", projection},
              {"tolerances",
               {{"alpha_reeb", alpha_tol}, {"omega_reeb", reeb_omega_tol}, {"normal_component", reeb_omega_tol},
                {"omega_fd", fd_tol}, {"xi_projection", projection_tol}}},
              {"certified", pass}};
    return {body, pass ? Ok : NumericalFinding};
}

inline Outcome contact_identity(const Options& o, const contact::VarietyModel& v) {
    const auto f = required_f(o, v);
    const auto samples = contact::sample_points(v, o.epsilon, o.samples, o.seed);
    double worst = 0.0, grad_worst = 0.0;
    std::size_t used = 0, skipped = 0;
    for (const auto& s : samples) {
        if (contact::on_binding(f, s.point)) {
            ++skipped;
            continue;
        }
        ++used;
        worst = std::max(worst, contact::rescaled_reeb_identity(v, f, o.c, s).residual);
        const auto g = contact::gradient_identities(v, s, f);
        grad_worst = std::max({grad_worst, g.defining, g.modulus, g.argument});
    }
    const double tol = o.c == 0.0 ? identity_tol_unscaled : identity_tol;
    const bool pass = worst <= tol && grad_worst <= gradient_tol;
    Json body{{"samples_used", used},
              {"samples_on_binding", skipped},
              {"max_residual", worst},
              {"max_gradient_identity_residual", grad_worst},
              {"tolerances", {{"residual", tol}, {"gradient_identity", gradient_tol}}},
              {"certified", pass}};
    return {body, pass ? Ok : NumericalFinding};
}

inline Outcome contact_adapt(const Options& o, const contact::VarietyModel& v) {
    const auto f = required_f(o, v);
    const auto r = contact::find_adaptation_constant(v, f, o.epsilon, o.eta, o.mesh, o.seed);
    Json body = contact::to_json(r);
    body["tolerances"] = Json{{"certified_if", "dtheta(R_c) > 0 at every mesh point with |f|^2 >= eta"}};
    return {body, r.verified ? Ok : NumericalFinding};
}

inline Outcome contact_cone(const Options& o, const contact::VarietyModel& v) {
    const auto f = required_f(o, v);
    const auto samples = contact::sample_points(v, o.epsilon, o.samples, o.seed);
    const auto r = contact::lambda_cone_check(v, f, samples, cone_tolerance);
    return {contact::to_json(r), r.all_positive ? Ok : NumericalFinding};
}

inline Outcome contact_criterion(const Options& o, const contact::VarietyModel& v) {
    const auto f = required_f(o, v);
    const auto r = contact::openbook_criterion_check(v, f, o.epsilon, o.eta, o.mesh, o.seed);
    return {contact::to_json(r), r.holds() ? Ok : NumericalFinding};
}

inline void validate_contact(const Options& o) {
    if (!(o.epsilon > 0.0) || !std::isfinite(o.epsilon)) throw Failure(InputError, "--epsilon must be positive");
    if (o.eta && !(*o.eta > 0.0)) throw Failure(InputError, "--eta must be positive");
    if (o.samples == 0) throw Failure(InputError, "--samples must be positive");
    if (!std::isfinite(o.c) || o.c < 0.0) throw Failure(InputError, "--c must be a non-negative number");
}

inline void emit(std::ostream& out, const Options& o, const Json& doc) {
    if (o.format == "structured") out << doc.dump(2) << "\n";
    else out << render_text(doc);
}

inline Json header(const std::string& command) { return Json{{"tool", "milnor-openbook"}, {"version", version()}, {"command", command}}; }

inline int run_check(const Options& o, std::ostream& out) {
    const auto g = read_graph_file(o.file);
    const bool fillable = is_milnor_fillable(g);
    Json doc = header("check");
    doc["config"] = Json{{"file", o.file}, {"format", o.format}};
    doc["vertices"] = g.size();
    doc["negative_definite"] = fillable;
    doc["verdict"] = fillable ? "Milnor fillable" : "not Milnor fillable: intersection form is not negative definite";
    emit(out, o, doc);
    return fillable ? Ok : NegativeVerdict;
}

inline int run_divisor(const Options& o, std::ostream& out) {
    const auto g = read_graph_file(o.file);
    if (!is_milnor_fillable(g)) throw Error(ErrorCode::NotMilnorFillable, "intersection form is not negative definite; no Milnor filling exists");
    const Divisor d = minimal_divisor(g);
    Json doc = header("divisor");
    doc["config"] = Json{{"file", o.file}, {"oracle", o.oracle}, {"bound", o.bound}, {"format", o.format}};
    doc["report"] = to_json(check_theorem_conditions(g, d));
    int code = Ok;
    if (o.oracle) {
        const Divisor reference = oracle_minimal_divisor(g, o.bound);
        const bool agree = reference == d;
        doc["oracle"] = Json{{"divisor", reference.m}, {"agrees", agree}};
        if (!agree) code = InternalFailure;
    }
    emit(out, o, doc);
    return code;
}

inline int run_openbook(const Options& o, std::ostream& out) {
    const auto g = read_graph_file(o.file);
    const auto report = ubiquitous_open_book(g);
    Json doc = header("openbook");
    doc["config"] = Json{{"file", o.file}, {"emit", o.emit}, {"format", o.format}};
    if (o.emit == "graph") doc["graph"] = graph_description(report.graph);
    else doc["report"] = to_json(report);
    emit(out, o, doc);
    return report.aut_invariant ? Ok : InternalFailure;
}

inline int run_contact(const Options& o, std::ostream& out) {
    validate_contact(o);
    const auto v = build_variety(o);
    Outcome outcome;
    if (o.check == "spsh") outcome = contact_spsh(o, v);
    else if (o.check == "reeb") outcome = contact_reeb(o, v);
    else if (o.check == "identity") outcome = contact_identity(o, v);
    else if (o.check == "adapt") outcome = contact_adapt(o, v);
    else if (o.check == "cone") outcome = contact_cone(o, v);
    else outcome = contact_criterion(o, v);
    Json doc = header("contact");
    doc["config"] = contact_config(o, v);
    doc["report"] = outcome.body;
    emit(out, o, doc);
    return outcome.code;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plumbing graphs, Milnor open books and contact-form numerics", "milnor"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();

    auto* check = app.add_subcommand("check", "Decide Milnor fillability of a plumbing graph");
    check->add_option("file", o.file, "Graph file")->required();

    auto* divisor = app.add_subcommand("divisor", "Least divisor satisfying the realisation inequality");
    divisor->add_option("file", o.file, "Graph file")->required();
    divisor->add_flag("--oracle", o.oracle, "Cross-check with exhaustive search");
    divisor->add_option("--bound", o.bound, "Oracle multiplicity bound")->check(CLI::NonNegativeNumber)->capture_default_str();

    auto* openbook = app.add_subcommand("openbook", "Full open-book pipeline");
    openbook->add_option("file", o.file, "Graph file")->required();
    openbook->add_option("--emit", o.emit, "Report or decorated graph description")
        ->check(CLI::IsMember({"text", "graph"}))
        ->capture_default_str();

    auto* contact_cmd = app.add_subcommand("contact", "Sampled checks of the contact forms");
    contact_cmd->add_option("check", o.check, "Check to run")
        ->required()
        ->check(CLI::IsMember({"spsh", "reeb", "identity", "adapt", "cone", "criterion"}));
    contact_cmd->add_option("--hypersurface", o.hypersurface, "Defining polynomial of a hypersurface");
    contact_cmd->add_option("--ambient", o.ambient, "Dimension of the smooth chart");
    contact_cmd->add_option("--map", o.map, "Comma-separated immersion components (default identity)");
    contact_cmd->add_option("--f", o.f, "Holomorphic function defining the open book");
    contact_cmd->add_option("--epsilon", o.epsilon, "Level of rho")->capture_default_str();
    contact_cmd->add_option("--eta", o.eta, "Binding-neighbourhood threshold");
    contact_cmd->add_option("--c", o.c, "Rescaling constant")->capture_default_str();
    contact_cmd->add_option("--samples", o.samples, "Sample count")->capture_default_str();
    contact_cmd->add_option("--mesh", o.mesh, "Mesh size")->capture_default_str();
    contact_cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    for (auto* sub : {check, divisor, openbook, contact_cmd}) sub->fallthrough();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e, out, err);
        return status == 0 ? Ok : InputError;
    }

    try {
        if (check->parsed()) return run_check(o, out);
        if (divisor->parsed()) return run_divisor(o, out);
        if (openbook->parsed()) return run_openbook(o, out);
        return run_contact(o, out);
    } catch (const Failure& e) {
        err << "error: " << e.what() << "\n";
        return e.code();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::logic_error& e) {
        err << "internal invariant failure: " << e.what() << "\n";
        return InternalFailure;
    } catch (const std::exception& e) {
        err << "internal failure: " << e.what() << "\n";
        return InternalFailure;
    }
}

}  // namespace milnor::cli
