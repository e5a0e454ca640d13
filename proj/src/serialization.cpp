#include "convchar/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace convchar {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const char* name, const std::string& where = "") {
    if (!j.is_object()) throw FormatError("expected a JSON object" + (where.empty() ? "" : " at " + where));
    const auto it = j.find(name);
    if (it == j.end()) throw FormatError("missing field '" + std::string(name) + "'");
    return *it;
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) throw FormatError("field " + path + ": expected a number");
    return j.get<double>();
}

std::size_t count_at(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw FormatError("field " + path + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

ComplexMatrix kernel_from_json(const json& root) {
    const std::size_t rows = count_at(require_field(root, "rows"), "rows");
    const std::size_t cols = count_at(require_field(root, "cols"), "cols");
    const json& kernel = require_field(root, "kernel");
    if (!kernel.is_array() || kernel.size() != rows) {
        throw FormatError("field kernel: expected an array of " + std::to_string(rows) + " rows");
    }
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string path = "kernel[" + std::to_string(r) + "]";
        const auto values = complex_vector_from_json(kernel[r], path);
        if (values.size() != cols) {
            throw FormatError("field " + path + ": expected " + std::to_string(cols) + " entries, got " +
                              std::to_string(values.size()));
        }
        std::copy(values.begin(), values.end(), m.row(r).begin());
    }
    return m;
}

json kernel_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        rows.push_back(complex_vector_to_json({row.begin(), row.end()}));
    }
    return rows;
}

json optional_number(const std::optional<double>& v) {
    return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

}  // namespace

json complex_to_json(complex v) { return json::array({v.real(), v.imag()}); }

json complex_vector_to_json(const std::vector<complex>& values) {
    json out = json::array();
    for (const complex& v : values) out.push_back(complex_to_json(v));
    return out;
}

std::vector<complex> complex_vector_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw FormatError("field " + path + ": expected an array of [re, im] pairs");
    std::vector<complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string item = path + "[" + std::to_string(i) + "]";
        const json& pair = j[i];
        if (!pair.is_array() || pair.size() != 2) throw FormatError("field " + item + ": expected [re, im]");
        const double re = number_at(pair[0], item + "[0]");
        const double im = number_at(pair[1], item + "[1]");
        if (!std::isfinite(re) || !std::isfinite(im)) throw FormatError("field " + item + ": non-finite value");
        out.emplace_back(re, im);
    }
    return out;
}

json signal_to_json(const Signal& s) { return complex_vector_to_json(s.values()); }

Signal signal_from_json(const FiniteAbelianGroup& g, const json& j) {
    auto values = complex_vector_from_json(j, "signal");
    if (values.size() != g.order()) {
        throw FormatError("signal has " + std::to_string(values.size()) + " entries, group " + g.spec() +
                          " has order " + std::to_string(g.order()));
    }
    return Signal(g, std::move(values));
}

json operator_to_json(const MultiplicativeOperator& op) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = op.output_index() == SpectrumIndex::Dual ? "fourier" : "cosine";
    j["group"] = op.group().spec();
    j["rows"] = op.kernel().rows();
    j["cols"] = op.kernel().cols();
    j["kernel"] = kernel_to_json(op.kernel());
    return j;
}

json operator_to_json(const LaplaceOperatorKernel& op) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "laplace";
    j["grid"] = {{"h", op.grid().step()}, {"count", op.grid().count()}};
    j["y_samples"] = op.y_samples();
    j["rows"] = op.kernel().rows();
    j["cols"] = op.kernel().cols();
    j["kernel"] = kernel_to_json(op.kernel());
    return j;
}

OperatorFile operator_from_json(const json& j) {
    const json& version = require_field(j, "schema_version");
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
        throw FormatError("field schema_version: unsupported value " + version.dump());
    }
    const json& kind_field = require_field(j, "kind");
    if (!kind_field.is_string()) throw FormatError("field kind: expected a string");
    const std::string kind = kind_field.get<std::string>();
    try {
        if (kind == "fourier" || kind == "cosine") {
            const json& group_field = require_field(j, "group");
            if (!group_field.is_string()) throw FormatError("field group: expected a group spec string");
            FiniteAbelianGroup g = [&] {
                try {
                    return FiniteAbelianGroup::parse(group_field.get<std::string>());
                } catch (const std::invalid_argument& e) {
                    throw FormatError(std::string("field group: ") + e.what());
                }
            }();
            return MultiplicativeOperator(std::move(g),
                                          kind == "fourier" ? SpectrumIndex::Dual : SpectrumIndex::Cosine,
                                          kernel_from_json(j));
        }
        if (kind == "laplace") {
            const json& grid = require_field(j, "grid");
            const double h = number_at(require_field(grid, "h", "grid"), "grid.h");
            const std::size_t count = count_at(require_field(grid, "count", "grid"), "grid.count");
            const json& ys = require_field(j, "y_samples");
            if (!ys.is_array()) throw FormatError("field y_samples: expected an array");
            std::vector<double> y;
            for (std::size_t i = 0; i < ys.size(); ++i) y.push_back(number_at(ys[i], "y_samples[" + std::to_string(i) + "]"));
            return LaplaceOperatorKernel(HalfLineGrid(h, count), std::move(y), kernel_from_json(j));
        }
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    throw FormatError("field kind: unknown kind '" + kind + "' (expected fourier, cosine or laplace)");
}

json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line and column.
        std::size_t line = 1, column = 1;
        const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw FormatError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": invalid JSON");
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

json target_to_json(const ThetaTarget& t) {
    if (const auto* i = std::get_if<IndexTarget>(&t)) return i->index;
    if (const auto* e = std::get_if<ExponentTarget>(&t)) return e->z;
    return nullptr;
}

json theta_to_json(const ThetaAssignment& theta) {
    json out = json::array();
    for (const auto& t : theta.targets) out.push_back(target_to_json(t));
    return out;
}

ThetaAssignment theta_from_json(const json& j, bool exponents) {
    const json& entries = j.is_object() ? require_field(j, "theta") : j;
    if (!entries.is_array()) throw FormatError("field theta: expected an array");
    ThetaAssignment theta;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "theta[" + std::to_string(i) + "]";
        const json& e = entries[i];
        if (e.is_null()) {
            theta.targets.emplace_back(Annihilated{});
        } else if (exponents) {
            const double z = number_at(e, path);
            if (!(z > 0.0)) throw FormatError("field " + path + ": exponent must be positive");
            theta.targets.emplace_back(ExponentTarget{z});
        } else {
            theta.targets.emplace_back(IndexTarget{count_at(e, path)});
        }
    }
    return theta;
}

json report_to_json(const ExtractionReport& report) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = to_string(report.kind);
    j["ok"] = report.ok();
    j["error"] = to_string(report.error);
    j["stage"] = report.stage;
    j["failing_row"] = report.failing_row ? json(*report.failing_row) : json(nullptr);
    j["failing_residual"] = optional_number(report.ok() ? std::nullopt : std::optional(report.failing_residual));
    j["message"] = report.message;
    j["tolerance"] = report.tolerance;
    j["fit_tolerance"] = optional_number(report.fit_tolerance);
    j["multiplicativity_residual"] = report.multiplicativity_residual;
    j["theta"] = report.theta ? theta_to_json(*report.theta) : json(nullptr);
    json rows = json::array();
    for (const auto& d : report.rows) {
        json r;
        r["row"] = d.row;
        r["ok"] = d.ok();
        r["annihilated"] = d.target && is_annihilated(*d.target);
        r["target"] = d.target ? target_to_json(*d.target) : json(nullptr);
        r["error"] = to_string(d.error);
        r["stage"] = d.stage;
        r["message"] = d.message;
        r["max_modulus"] = d.max_modulus;
        r["pivot"] = d.pivot ? json(*d.pivot) : json(nullptr);
        r["pivot_fallback"] = d.pivot_fallback;
        r["modulus_deviation"] = optional_number(d.modulus_deviation);
        r["equation_residual"] = optional_number(d.equation_residual);
        r["evenness_residual"] = optional_number(d.evenness_residual);
        r["match_distance"] = optional_number(d.match_distance);
        r["runner_up_distance"] = optional_number(d.runner_up_distance);
        r["factorization_residual"] = optional_number(d.factorization_residual);
        if (report.kind == ExtractionKind::Laplace) {
            r["min_modulus"] = optional_number(d.min_modulus);
            r["max_imag"] = optional_number(d.max_imag);
            r["fit_intercept"] = optional_number(d.fit_intercept);
            r["fit_residual"] = optional_number(d.fit_residual);
            r["fit_nodes"] = d.fit_nodes ? json(*d.fit_nodes) : json(nullptr);
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

json study_to_json(const ConvergenceStudy& study) {
    json j;
    j["f"] = study.f;
    j["g"] = study.g;
    j["y"] = study.y;
    json steps = json::array();
    for (const auto& row : study.by_step) {
        steps.push_back({{"h", row.step},
                         {"count", row.count},
                         {"residual", row.residual},
                         {"residual_by_y", row.residual_by_y},
                         {"ratio", optional_number(row.ratio)},
                         {"order", optional_number(row.order)}});
    }
    j["by_step"] = std::move(steps);
    json horizons = json::array();
    for (const auto& row : study.by_horizon) horizons.push_back({{"X", row.horizon}, {"residual", row.residual}});
    j["by_horizon"] = std::move(horizons);
    return j;
}

std::string study_to_csv(const ConvergenceStudy& study) {
    std::ostringstream os;
    os.precision(17);
    os << "table,h,X,count,residual,ratio,order\n";
    for (const auto& row : study.by_step) {
        os << "step," << row.step << ",," << row.count << ',' << row.residual << ',';
        if (row.ratio) os << *row.ratio;
        os << ',';
        if (row.order) os << *row.order;
        os << '\n';
    }
    for (const auto& row : study.by_horizon) {
        os << "horizon," << study.by_step.front().step << ',' << row.horizon << ",," << row.residual << ",,\n";
    }
    return os.str();
}

}  // namespace convchar
