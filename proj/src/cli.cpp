#include "convchar/cli.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "convchar/characterizer.hpp"
#include "convchar/identities.hpp"
#include "convchar/operator_factory.hpp"
#include "convchar/random.hpp"
#include "convchar/serialization.hpp"

namespace convchar::cli {

using nlohmann::json;

namespace {

/// Input problems that map to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string group;
    std::string kind;
    double tol = 1e-8;
    double tol_eq = 1e-6;
    double tol_fit = 1e-6;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double h = 0.01;
    double horizon = 0.0;
    std::string y_grid = "0.5,1,2";
    std::string operator_path;
    std::string theta = "identity";
    std::string out;
    std::string functions = "exp,exp";
    std::size_t levels = 3;
    std::string format;
    std::optional<double> study_tol;
    double epsilon = 0.0;
    std::size_t threads = 1;
};

double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v)) {
        throw UsageError("malformed number '" + text + "' in " + what);
    }
    return v;
}

void emit(const std::string& text, const Options& opt, std::ostream& out) {
    if (opt.out.empty()) {
        out << text;
    } else {
        write_text_file(opt.out, text);
    }
}

void emit(const json& report, const Options& opt, std::ostream& out) { emit(report.dump(2) + "\n", opt, out); }

TransformKind finite_kind(const std::string& kind) {
    if (kind == "fourier") return TransformKind::Fourier;
    if (kind == "cosine") return TransformKind::Cosine;
    throw UsageError("--kind must be fourier or cosine here, got '" + kind + "'");
}

FiniteAbelianGroup parse_group(const std::string& spec) {
    if (spec.empty()) throw UsageError("--group is required for finite-group kinds");
    try {
        return FiniteAbelianGroup::parse(spec);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

HalfLineGrid laplace_grid(const Options& opt, double default_horizon) {
    try {
        return HalfLineGrid::from_horizon(opt.h, opt.horizon > 0.0 ? opt.horizon : default_horizon);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::vector<double> y_samples(const Options& opt) {
    auto y = parse_y_grid(opt.y_grid);
    for (double v : y) {
        if (!(v > 0.0)) throw UsageError("--y-grid values must be positive");
    }
    return y;
}

ThetaAssignment finite_theta(const Options& opt, std::size_t size) {
    const std::string& t = opt.theta;
    if (t == "identity") return identity_theta(size);
    if (t == "zero") return annihilated_theta(size);
    if (t == "constant") return constant_theta(size, 0);
    if (t == "permutation") return random_theta(size, ThetaShape::Permutation, opt.seed);
    if (t == "non-injective") return random_theta(size, ThetaShape::NonInjective, opt.seed);
    if (t == "partially-annihilated") return random_theta(size, ThetaShape::PartiallyAnnihilated, opt.seed);
    return theta_from_json(read_json_file(t), false);
}

ThetaAssignment laplace_theta(const Options& opt, const std::vector<double>& y) {
    ThetaAssignment theta;
    if (opt.theta == "identity" || opt.theta == "shift") {
        const double offset = opt.theta == "shift" ? 1.0 : 0.0;
        for (double v : y) theta.targets.emplace_back(ExponentTarget{offset + v});
        return theta;
    }
    if (opt.theta == "zero") return annihilated_theta(y.size());
    return theta_from_json(read_json_file(opt.theta), true);
}

int cmd_verify_identities(const Options& opt, std::ostream& out) {
    const auto g = parse_group(opt.group);
    const IdentitySuite suite = verify_identities(g, opt.trials ? opt.trials : 10, opt.seed);
    json identities = json::object();
    for (const auto& r : suite.results) {
        identities[r.name] = {{"max_residual", r.max_residual},
                              {"tolerance", r.tolerance ? json(*r.tolerance) : json(nullptr)},
                              {"asserted", r.tolerance.has_value()},
                              {"pass", r.pass}};
    }
    json report = {{"schema_version", kSchemaVersion},
                   {"command", "verify-identities"},
                   {"group", suite.group},
                   {"trials", suite.trials},
                   {"seed", suite.seed},
                   {"identities", identities},
                   {"evenness_precondition_enforced",
                    suite.evenness_precondition_enforced ? json(*suite.evenness_precondition_enforced)
                                                         : json(nullptr)},
                   {"pass", suite.pass()}};
    emit(report, opt, out);
    return suite.pass() ? kExitOk : kExitViolation;
}

int cmd_laplace_study(const Options& opt, std::ostream& out) {
    const auto comma = opt.functions.find(',');
    if (comma == std::string::npos) throw UsageError("--functions expects 'f,g'");
    TestFunction f = TestFunction::parse("zero"), g = f;
    try {
        f = TestFunction::parse(opt.functions.substr(0, comma));
        g = TestFunction::parse(opt.functions.substr(comma + 1));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!(opt.h > 0.0)) throw UsageError("--h must be positive");
    const double horizon = opt.horizon > 0.0 ? opt.horizon : 30.0;
    if (opt.levels < 1) throw UsageError("--levels must be >= 1");
    std::vector<double> steps;
    for (std::size_t i = 0; i < opt.levels; ++i) steps.push_back(opt.h / std::pow(2.0, static_cast<double>(i)));
    const auto study = convergence_study(f, g, y_samples(opt), steps, horizon, {horizon, 2.0 * horizon});

    bool pass = true;
    if (opt.study_tol) pass = study.by_step.back().residual <= *opt.study_tol;

    std::string format = opt.format;
    if (format.empty()) format = opt.out.ends_with(".csv") ? "csv" : "json";
    if (format == "csv") {
        emit(study_to_csv(study), opt, out);
    } else if (format == "json") {
        json report = {{"schema_version", kSchemaVersion},
                       {"command", "laplace-study"},
                       {"h", opt.h},
                       {"X", horizon},
                       {"study", study_to_json(study)},
                       {"tolerance", opt.study_tol ? json(*opt.study_tol) : json(nullptr)},
                       {"pass", pass}};
        emit(report, opt, out);
    } else {
        throw UsageError("--format must be json or csv");
    }
    return pass ? kExitOk : kExitViolation;
}

int cmd_make_operator(const Options& opt, std::ostream& out) {
    if (opt.kind == "laplace") {
        const auto y = y_samples(opt);
        const auto theta = laplace_theta(opt, y);
        if (theta.size() != y.size()) {
            throw UsageError("theta has " + std::to_string(theta.size()) + " entries, --y-grid has " +
                             std::to_string(y.size()));
        }
        emit(operator_to_json(build_laplace_from_exponents(laplace_grid(opt, 20.0), y, theta)), opt, out);
        return kExitOk;
    }
    const TransformKind kind = finite_kind(opt.kind);
    const auto g = parse_group(opt.group);
    const auto theta = finite_theta(opt, theta_size(g, kind));
    MultiplicativeOperator op = [&] {
        try {
            return build_from_theta(g, kind, theta);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }();
    if (opt.epsilon > 0.0) op = perturb(op, opt.epsilon, opt.seed);
    emit(operator_to_json(op), opt, out);
    return kExitOk;
}

int cmd_extract(const Options& opt, std::ostream& out) {
    if (opt.operator_path.empty()) throw UsageError("--operator is required");
    const OperatorFile file = operator_from_json(read_json_file(opt.operator_path));
    const std::size_t trials = opt.trials ? opt.trials : 100;
    ExtractionOptions options;
    options.threads = opt.threads;

    ExtractionReport report;
    std::optional<double> verification;
    double verification_tol = 0.0;
    if (const auto* laplace = std::get_if<LaplaceOperatorKernel>(&file)) {
        if (opt.kind != "laplace") throw UsageError("operator file holds a laplace kernel, --kind is " + opt.kind);
        report = extract_theta_laplace(*laplace, opt.tol_eq, opt.tol_fit, options);
        verification_tol = 10.0 * opt.tol_fit;
        if (report.ok()) verification = verify_factorization(*laplace, *report.theta, trials, opt.seed);
    } else {
        const auto& op = std::get<MultiplicativeOperator>(file);
        const std::string file_kind = op.output_index() == SpectrumIndex::Dual ? "fourier" : "cosine";
        if (opt.kind != file_kind) {
            throw UsageError("operator file holds a " + file_kind + " kernel, --kind is " + opt.kind);
        }
        report = file_kind == "fourier" ? extract_theta_fourier(op, opt.tol, options)
                                        : extract_theta_cosine(op, opt.tol, options);
        verification_tol = 10.0 * opt.tol;
        if (report.ok()) verification = verify_factorization(op, *report.theta, trials, opt.seed);
    }

    const bool verified = verification && *verification <= verification_tol;
    json j = {{"schema_version", kSchemaVersion}, {"command", "extract"}, {"report", report_to_json(report)}};
    j["verification"] = verification ? json{{"trials", trials},
                                            {"seed", opt.seed},
                                            {"max_residual", *verification},
                                            {"tolerance", verification_tol},
                                            {"pass", verified}}
                                     : json(nullptr);
    j["pass"] = report.ok() && verified;
    emit(j, opt, out);
    return report.ok() && verified ? kExitOk : kExitViolation;
}

int cmd_roundtrip(const Options& opt, std::ostream& out) {
    const std::size_t trials = opt.trials ? opt.trials : 3;
    const ThetaShape shapes[] = {ThetaShape::Permutation, ThetaShape::NonInjective,
                                 ThetaShape::PartiallyAnnihilated};
    json runs = json::array();
    bool pass = true;
    json header = {{"schema_version", kSchemaVersion}, {"command", "roundtrip"}, {"kind", opt.kind}, {"seed", opt.seed}};

    if (opt.kind == "laplace") {
        const auto grid = laplace_grid(opt, 20.0);
        const auto y = y_samples(opt);
        header["grid"] = {{"h", grid.step()}, {"count", grid.count()}};
        header["y_samples"] = y;
        for (std::size_t t = 0; t < trials; ++t) {
            Rng rng(derive_seed(opt.seed, t));
            ThetaAssignment planted;
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (rng.coin(0.25)) {
                    planted.targets.emplace_back(Annihilated{});
                } else {
                    planted.targets.emplace_back(ExponentTarget{rng.uniform(0.5, 3.0)});
                }
            }
            const auto report = extract_theta_laplace(build_laplace_from_exponents(grid, y, planted),
                                                      opt.tol_eq, opt.tol_fit);
            bool match = report.ok();
            for (std::size_t i = 0; match && i < planted.size(); ++i) {
                const auto* p = std::get_if<ExponentTarget>(&planted[i]);
                const auto* r = std::get_if<ExponentTarget>(&(*report.theta)[i]);
                match = p ? (r && std::abs(r->z - p->z) <= 1e-8 * p->z) : is_annihilated((*report.theta)[i]);
            }
            pass = pass && match;
            runs.push_back({{"trial", t},
                            {"planted", theta_to_json(planted)},
                            {"recovered", report.theta ? theta_to_json(*report.theta) : json(nullptr)},
                            {"error", to_string(report.error)},
                            {"match", match}});
        }
    } else {
        const TransformKind kind = finite_kind(opt.kind);
        const auto g = parse_group(opt.group);
        header["group"] = g.spec();
        for (std::size_t t = 0; t < trials; ++t) {
            const ThetaShape shape = shapes[t % 3];
            const auto planted = random_theta(theta_size(g, kind), shape, derive_seed(opt.seed, t));
            const auto op = build_from_theta(g, kind, planted);
            const auto report = kind == TransformKind::Fourier ? extract_theta_fourier(op, opt.tol)
                                                               : extract_theta_cosine(op, opt.tol);
            const bool match = report.ok() && *report.theta == planted;
            pass = pass && match;
            runs.push_back({{"trial", t},
                            {"shape", to_string(shape)},
                            {"planted", theta_to_json(planted)},
                            {"recovered", report.theta ? theta_to_json(*report.theta) : json(nullptr)},
                            {"error", to_string(report.error)},
                            {"match", match}});
        }
    }
    header["trials"] = std::move(runs);
    header["pass"] = pass;
    emit(header, opt, out);
    return pass ? kExitOk : kExitViolation;
}

}  // namespace

std::vector<double> parse_y_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) throw UsageError("--y-grid expects a:b:n or a comma list");
        const double a = parse_double(parts[0], "--y-grid");
        const double b = parse_double(parts[1], "--y-grid");
        const double n_value = parse_double(parts[2], "--y-grid");
        if (n_value < 1 || n_value != std::floor(n_value)) throw UsageError("--y-grid: n must be a positive integer");
        const auto n = static_cast<std::size_t>(n_value);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
        return out;
    }
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) out.push_back(parse_double(part, "--y-grid"));
    if (out.empty()) throw UsageError("--y-grid is empty");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fourier, cosine and Laplace transforms characterized by their convolution property"};
    app.require_subcommand(1);
    // --h is the grid step, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    Options opt;

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", opt.out, "Report file (default: stdout)"); };
    auto add_seed = [&](CLI::App* cmd) { cmd->add_option("--seed", opt.seed, "Random seed")->capture_default_str(); };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--h", opt.h, "Grid step")->capture_default_str();
        cmd->add_option("--X", opt.horizon, "Grid horizon");
        cmd->add_option("--y-grid", opt.y_grid, "y samples: a:b:n or comma list")->capture_default_str();
    };
    auto add_tols = [&](CLI::App* cmd) {
        cmd->add_option("--tol", opt.tol, "Finite-group tolerance")->capture_default_str();
        cmd->add_option("--tol-eq", opt.tol_eq, "Laplace functional-equation tolerance")->capture_default_str();
        cmd->add_option("--tol-fit", opt.tol_fit, "Laplace exponent-fit tolerance")->capture_default_str();
    };
    const std::vector<std::string> kinds = {"fourier", "cosine", "laplace"};

    auto* verify = app.add_subcommand("verify-identities", "Check the convolution theorems and lemmas");
    verify->add_option("--group", opt.group, "Group spec, e.g. 4x3")->required();
    verify->add_option("--trials", opt.trials, "Random signal trials (default 10)");
    add_seed(verify);
    add_out(verify);

    auto* study = app.add_subcommand("laplace-study", "Convergence of the Laplace convolution identity");
    study->add_option("--functions", opt.functions, "f,g from zero|const|exp|exp:<a>|poly-cutoff")
        ->capture_default_str();
    add_grid(study);
    study->add_option("--levels", opt.levels, "Number of step halvings")->capture_default_str();
    study->add_option("--format", opt.format, "json or csv (default from --out extension)");
    study->add_option("--tol", opt.study_tol, "Fail if the finest residual exceeds this");
    add_out(study);

    auto* make = app.add_subcommand("make-operator", "Write a kernel file T = transform o theta");
    make->add_option("--kind", opt.kind, "fourier, cosine or laplace")->required()->check(CLI::IsMember(kinds));
    make->add_option("--group", opt.group, "Group spec (fourier/cosine)");
    make->add_option("--theta", opt.theta,
                     "Theta file or preset: identity, zero, constant, permutation, non-injective, "
                     "partially-annihilated (finite); identity, shift, zero (laplace)")
        ->capture_default_str();
    make->add_option("--epsilon", opt.epsilon, "Perturb kernel entries by noise of modulus <= epsilon");
    add_seed(make);
    add_grid(make);
    add_out(make);

    auto* extract = app.add_subcommand("extract", "Extract theta from a kernel file and certify it");
    extract->add_option("--kind", opt.kind, "fourier, cosine or laplace")->required()->check(CLI::IsMember(kinds));
    extract->add_option("--operator", opt.operator_path, "Kernel file")->required();
    add_tols(extract);
    extract->add_option("--trials", opt.trials, "Random signals for the factorization check (default 100)");
    extract->add_option("--threads", opt.threads, "Row-extraction threads")->capture_default_str();
    add_seed(extract);
    add_out(extract);

    auto* roundtrip = app.add_subcommand("roundtrip", "Plant theta, build T, extract, compare");
    roundtrip->add_option("--kind", opt.kind, "fourier, cosine or laplace")->required()->check(CLI::IsMember(kinds));
    roundtrip->add_option("--group", opt.group, "Group spec (fourier/cosine)");
    roundtrip->add_option("--trials", opt.trials, "Planted assignments (default 3, cycling shapes)");
    add_tols(roundtrip);
    add_seed(roundtrip);
    add_grid(roundtrip);
    add_out(roundtrip);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) return cmd_verify_identities(opt, out);
        if (*study) return cmd_laplace_study(opt, out);
        if (*make) return cmd_make_operator(opt, out);
        if (*extract) return cmd_extract(opt, out);
        if (*roundtrip) return cmd_roundtrip(opt, out);
    } catch (const FormatError& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace convchar::cli
