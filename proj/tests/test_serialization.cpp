#include <algorithm>
#include <functional>

#include "doctest.h"

#include "convchar/operator_factory.hpp"
#include "convchar/serialization.hpp"

using namespace convchar;
using nlohmann::json;

namespace {

std::string error_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const FormatError& e) {
        return e.what();
    }
    return "<no error>";
}

json z3_file() {
    return operator_to_json(build_from_theta(FiniteAbelianGroup({3}), TransformKind::Fourier, identity_theta(3)));
}

}  // namespace

TEST_SUITE("serialization") {

TEST_CASE("operator round trip") {
    const auto op = perturb(build_from_theta(FiniteAbelianGroup({2, 3}), TransformKind::Cosine, identity_theta(4)), 0.3, 9);
    const auto text = operator_to_json(op).dump();
    const auto back = operator_from_json(json::parse(text));
    REQUIRE(std::holds_alternative<MultiplicativeOperator>(back));
    CHECK(std::get<MultiplicativeOperator>(back) == op);

    const auto lop = build_laplace_from_exponents(HalfLineGrid(0.25, 9), {0.5, 1.5},
                                                  ThetaAssignment{{ExponentTarget{1.3}, Annihilated{}}});
    const auto lback = operator_from_json(json::parse(operator_to_json(lop).dump()));
    REQUIRE(std::holds_alternative<LaplaceOperatorKernel>(lback));
    const auto& l = std::get<LaplaceOperatorKernel>(lback);
    CHECK(l.grid() == lop.grid());
    CHECK(l.y_samples() == lop.y_samples());
    CHECK(l.kernel() == lop.kernel());
}

TEST_CASE("malformed operator files name the offending field") {
    CHECK(error_of([] { operator_from_json(json::array()); }).find("object") != std::string::npos);

    auto j = z3_file();
    j.erase("kind");
    CHECK(error_of([&] { operator_from_json(j); }) == "missing field 'kind'");

    j = z3_file();
    j["schema_version"] = 7;
    CHECK(error_of([&] { operator_from_json(j); }).find("schema_version") != std::string::npos);

    j = z3_file();
    j["kind"] = "hartley";
    CHECK(error_of([&] { operator_from_json(j); }).find("field kind") != std::string::npos);

    j = z3_file();
    j["group"] = "3x";
    CHECK(error_of([&] { operator_from_json(j); }).find("field group") != std::string::npos);

    j = z3_file();
    j["kernel"][1][2] = json::array({1.0});
    CHECK(error_of([&] { operator_from_json(j); }).find("kernel[1][2]") != std::string::npos);

    j = z3_file();
    j["kernel"][2].erase(0);
    CHECK(error_of([&] { operator_from_json(j); }).find("kernel[2]") != std::string::npos);

    j = z3_file();
    j["kernel"][0][0][1] = "x";
    CHECK(error_of([&] { operator_from_json(j); }).find("kernel[0][0]") != std::string::npos);

    j = z3_file();
    j["rows"] = 2;
    CHECK(error_of([&] { operator_from_json(j); }).find("kernel") != std::string::npos);

    j = z3_file();
    j["rows"] = -1;
    CHECK(error_of([&] { operator_from_json(j); }).find("rows") != std::string::npos);

    // Shape consistent with itself but not with the group.
    j = z3_file();
    j["group"] = "4";
    CHECK(error_of([&] { operator_from_json(j); }) != "<no error>");

    auto l = operator_to_json(build_laplace_from_exponents(HalfLineGrid(0.5, 3), {1.0}, ThetaAssignment{{ExponentTarget{1.0}}}));
    l["grid"]["h"] = "fine";
    CHECK(error_of([&] { operator_from_json(l); }).find("grid.h") != std::string::npos);
    l["grid"]["h"] = -0.5;
    CHECK(error_of([&] { operator_from_json(l); }) != "<no error>");
}

TEST_CASE("JSON syntax errors carry line and column") {
    const std::string text = "{\n  \"kind\": \"fourier\",\n  \"rows\": ]\n}";
    CHECK(error_of([&] { parse_json_text(text, "op.json"); }) == "op.json:3:11: invalid JSON");
    CHECK(error_of([&] { parse_json_text("", "empty.json"); }).rfind("empty.json:1:", 0) == 0);
}

TEST_CASE("theta round trip") {
    const ThetaAssignment t{{IndexTarget{3}, Annihilated{}, IndexTarget{0}}};
    CHECK(theta_to_json(t).dump() == "[3,null,0]");
    CHECK(theta_from_json(theta_to_json(t), false) == t);
    CHECK(theta_from_json(json{{"theta", theta_to_json(t)}}, false) == t);
    const ThetaAssignment e{{ExponentTarget{0.1}, Annihilated{}}};
    CHECK(theta_from_json(json::parse(theta_to_json(e).dump()), true) == e);
    CHECK(error_of([] { theta_from_json(json::parse("[1, -2]"), false); }).find("theta[1]") != std::string::npos);
    CHECK(error_of([] { theta_from_json(json::parse("[0.0]"), true); }).find("theta[0]") != std::string::npos);
    CHECK(error_of([] { theta_from_json(json::parse("{\"x\": 1}"), false); }) == "missing field 'theta'");
}

TEST_CASE("signal round trip") {
    const FiniteAbelianGroup g({2, 2});
    const auto s = random_signal(g, 8);
    CHECK(signal_from_json(g, json::parse(signal_to_json(s).dump())) == s);
    CHECK_THROWS_AS(signal_from_json(FiniteAbelianGroup({3}), signal_to_json(s)), FormatError);
}

TEST_CASE("report fields") {
    const auto op = build_from_theta(FiniteAbelianGroup({4}), TransformKind::Fourier, identity_theta(4));
    const auto j = report_to_json(extract_theta_fourier(op));
    CHECK(j["ok"] == true);
    CHECK(j["error"] == "None");
    CHECK(j["theta"].dump() == "[0,1,2,3]");
    CHECK(j["rows"].size() == 4);
    CHECK_FALSE(j["rows"][0].contains("fit_residual"));

    const auto bad = report_to_json(extract_theta_fourier(perturb(op, 0.2, 1)));
    CHECK(bad["ok"] == false);
    CHECK(bad["theta"].is_null());
    CHECK(bad["error"] == "NotMultiplicative");
    CHECK(bad["failing_row"].is_number_unsigned());
}

TEST_CASE("study CSV") {
    const auto f = TestFunction::parse("exp");
    const auto study = convergence_study(f, f, {1.0}, {0.02, 0.01}, 10.0, {10.0});
    const auto csv = study_to_csv(study);
    CHECK(csv.rfind("table,h,X,count,residual,ratio,order\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    const auto j = study_to_json(study);
    CHECK(j["by_step"].size() == 2);
}

}  // TEST_SUITE
