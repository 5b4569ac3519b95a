#include <doctest.h>

#include <json.hpp>

#include "qst/cli/commands.hpp"

using namespace qst;
using namespace qst::cli;

namespace {

std::string error_pointer(std::string_view text)
{
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e.pointer();
    }
    return "<no error>";
}

RunConfig config(std::string_view text)
{
    RunConfig cfg = parse_config(text);
    cfg.seed = resolve_seed(std::nullopt, cfg.seed, nullptr);
    return cfg;
}

}  // namespace

TEST_CASE("minimal config fills defaults")
{
    const RunConfig cfg = parse_config(R"({"spacetime":"kappa_minkowski","kappa":1,"d":3})");
    CHECK(cfg.preset() == Preset::kappa_minkowski);
    CHECK(cfg.deformation == 1.0);
    CHECK(cfg.d == 3);
    CHECK_FALSE(cfg.seed.has_value());
    CHECK(cfg.jobs == 1);
    CHECK(cfg.output == "-");
    CHECK(cfg.format == Format::csv);
    CHECK(cfg.tolerances.empty());
    CHECK(cfg.parameters == Parameters{});
    CHECK(cfg.group_dim() == 4);
    CHECK(cfg.structure() == preset(Preset::kappa_minkowski, 1.0, 4));

    CHECK(parse_config(R"({"spacetime":"moyal_extended"})").d == 4);
    CHECK(parse_config(R"({"spacetime":"moyal_extended"})").group_dim() == 5);
    CHECK(parse_config(R"({"spacetime":"su2_lambda","lambda":0.5})").group_dim() == 3);
}

TEST_CASE("schema violations name their JSON pointer")
{
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","kapa":1})") == "/kapa");
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","output":{"fmt":"csv"}})") == "/output/fmt");
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","output":{"format":"xml"}})") == "/output/format");
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","parameters":{"mass":-1}})") == "/parameters/mass");
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","tolerances":{"a/b":-1}})") == "/tolerances/a~1b");
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","theta":1})") == "/theta");
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","kappa":0})") == "/kappa");
    CHECK(error_pointer(R"({"spacetime":"lorentz"})") == "/spacetime");
    CHECK(error_pointer(R"({"kappa":1})") == "/spacetime");
    CHECK(error_pointer(R"({"spacetime":"kappa_minkowski","seed":-3})") == "/seed");
    CHECK(error_pointer("[1,2]") == "");
    CHECK(error_pointer("{not json") == "");

    try {
        (void)parse_config(R"({"spacetime":"kappa_minkowski","kapa":1})");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/kapa") != std::string::npos);
    }
}

TEST_CASE("configs round-trip through serialize and parse")
{
    SUBCASE("inline structure constants")
    {
        StructureConstants sc("ax+b", 2, 0.5);
        sc.set(0, 1, 1, cplx{0.0, 0.5});
        sc.set_labels({"t", "x"});
        RunConfig cfg;
        cfg.spacetime = sc;
        // Parsing mirrors the tensor's deformation and dimension into the config.
        cfg.deformation = sc.deformation();
        cfg.d = sc.dim();
        cfg.seed = 42;
        cfg.tolerances["group.haar"] = 1e-9;
        cfg.parameters.samples = 17;
        const RunConfig back = parse_config(serialize_config(cfg));
        CHECK(back == cfg);
        CHECK(std::get<StructureConstants>(back.spacetime) == sc);
        CHECK(serialize_config(back) == serialize_config(cfg));
    }
    SUBCASE("presets")
    {
        for (const char* text : {R"({"spacetime":"moyal_extended","theta":0.25,"d":2})",
                                 R"({"spacetime":"rho_minkowski","rho":2,"jobs":3})",
                                 R"({"spacetime":"kappa_minkowski","kappa":3,"d":1,"output":{"path":"r.json","format":"json"}})"}) {
            const RunConfig cfg = parse_config(text);
            CHECK(parse_config(serialize_config(cfg)) == cfg);
        }
    }
}

TEST_CASE("seed precedence is flag, config, environment, default")
{
    CHECK(resolve_seed(7, 8, "9") == 7);
    CHECK(resolve_seed(std::nullopt, 8, "9") == 8);
    CHECK(resolve_seed(std::nullopt, std::nullopt, "9") == 9);
    CHECK(resolve_seed(std::nullopt, std::nullopt, nullptr) == default_seed);
    CHECK(resolve_seed(std::nullopt, std::nullopt, "") == default_seed);
    CHECK_THROWS(resolve_seed(std::nullopt, std::nullopt, "12abc"));

    GlobalOptions flags;
    CHECK(*resolve_config(flags, "5").seed == 5);
    flags.seed = 3;
    CHECK(*resolve_config(flags, "5").seed == 3);
    flags.tol_overrides = {"group.haar=1e-3", "group.haar=2e-3"};
    CHECK(resolve_config(flags, nullptr).tolerance("group.haar", 1.0) == 2e-3);
    flags.tol_overrides = {"group.haar"};
    CHECK_THROWS_AS(resolve_config(flags, nullptr), UsageError);
}

TEST_CASE("CSV follows RFC 4180")
{
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
    CHECK(csv_escape("") == "");

    Table t({"name", "value"});
    t.add_row({"x,y", "1.5"});
    t.add_row({"q\"", "-2"});
    CHECK(t.to_csv() == "name,value\r\n\"x,y\",1.5\r\n\"q\"\"\",-2\r\n");
    const auto j = nlohmann::json::parse(t.to_json());
    CHECK(j[0]["name"] == "x,y");
    CHECK(j[0]["value"] == 1.5);
    CHECK_THROWS(t.add_row({"only one"}));

    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-300) == "1e-300");
    CHECK(format_number(-0.0) == "-0");
}

TEST_CASE("grids parse strictly")
{
    CHECK(arithmetic_grid("-1:1:0.5") == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
    CHECK(arithmetic_grid("0.25") == std::vector<double>{0.25});
    CHECK(arithmetic_grid("-1:1:0.25").size() == 9);
    CHECK_THROWS_AS(arithmetic_grid("1:0:0.5"), UsageError);
    CHECK_THROWS_AS(arithmetic_grid("0:1:0"), UsageError);
    CHECK_THROWS_AS(arithmetic_grid("0:1"), UsageError);
    CHECK_THROWS_AS(arithmetic_grid("a:1:1"), UsageError);
    CHECK(parse_momentum("1,-2.5,3e-1") == Momentum{1.0, -2.5, 0.3});
    CHECK_THROWS_AS(parse_momentum("1,,2"), UsageError);
    CHECK_THROWS_AS(parse_momentum(""), UsageError);
}

TEST_CASE("suite exit codes")
{
    SUBCASE("hopf passes on kappa-Poincare")
    {
        const auto out = run_suite(Suite::hopf, config(R"({"spacetime":"kappa_minkowski"})"));
        CHECK(out.exit_code == exit_code::ok);
        CHECK(out.report.checks.size() > 80);
        for (const auto& c : out.report.checks) CHECK_FALSE(c.anchor.empty());
    }
    SUBCASE("corrupted structure constants fail the Jacobi check")
    {
        StructureConstants sc("broken su2", 3, 1.0);
        sc.set(0, 1, 2, cplx{0.0, 1.0});
        sc.set(1, 2, 0, cplx{0.0, 1.0});
        sc.set(2, 0, 1, cplx{0.0, 1.0});
        sc.set(0, 1, 0, 1.0);
        RunConfig cfg;
        cfg.spacetime = sc;
        cfg.seed = 1;
        cfg.parameters.samples = 200;
        const auto out = run_suite(Suite::group, cfg);
        CHECK(out.exit_code == exit_code::check_failed);
        REQUIRE_FALSE(out.report.checks.empty());
        CHECK(out.report.checks.front().name == "jacobi");
        CHECK_FALSE(out.report.checks.front().passed);
    }
    SUBCASE("suites outside their spacetime are usage errors")
    {
        const auto cfg = config(R"({"spacetime":"rho_minkowski"})");
        CHECK(run_suite(Suite::gauge, cfg).exit_code == exit_code::usage);
        CHECK(run_suite(Suite::causality, cfg).exit_code == exit_code::usage);
        CHECK(run_suite(Suite::mixing, cfg).exit_code == exit_code::usage);
        CHECK_FALSE(run_suite(Suite::mixing, cfg).error.empty());
        CHECK_THROWS_AS(parse_suite("everything"), UsageError);
    }
    SUBCASE("an unusable causality grid is a usage error")
    {
        auto cfg = config(R"({"spacetime":"kappa_minkowski","parameters":{"grid_points":16}})");
        CHECK(run_suite(Suite::causality, cfg).exit_code == exit_code::usage);
    }
}

TEST_CASE("Moyal mixing verdict appears in the JSON report")
{
    auto cfg = config(R"({"spacetime":"moyal_extended","theta":1,"d":4})");
    cfg.format = Format::json;
    const auto result = run_command(Suite::mixing, cfg);
    CHECK(result.exit_code == exit_code::ok);
    const auto j = nlohmann::json::parse(result.text);
    CHECK(j["summary"]["mixing.verdict"] == "MIXING");
    CHECK(j["passed"] == true);

    const auto kappa = run_suite(Suite::mixing, config(R"({"spacetime":"kappa_minkowski","d":2})"));
    CHECK(kappa.exit_code == exit_code::ok);
    CHECK(kappa.report.summary.front().second == "NO_MIXING");
}

TEST_CASE("reports are byte-identical across runs and job counts")
{
    auto cfg = config(R"({"spacetime":"kappa_minkowski","seed":11,"parameters":{"slopes":"-1:1:1","samples":500}})");
    for (Suite s : {Suite::group, Suite::mixing, Suite::causality, Suite::trace}) {
        cfg.jobs = 1;
        const auto serial = run_command(s, cfg).text;
        CHECK(run_command(s, cfg).text == serial);
        cfg.jobs = 3;
        CHECK(run_command(s, cfg).text == serial);
    }
    cfg.jobs = 1;
    const auto a = run_command(Suite::group, cfg).text;
    cfg.seed = 12;
    CHECK(run_command(Suite::group, cfg).text != a);
}

TEST_CASE("standalone commands")
{
    const auto cfg = config(R"({"spacetime":"kappa_minkowski","kappa":1,"d":1})");
    SUBCASE("group operations")
    {
        const auto sum = nlohmann::json::parse(group_command(GroupOp::add, cfg, {"0.5,1", "-0.5,2"}, 0.0).text);
        CHECK(sum["result"].size() == 2);
        CHECK(sum["result"][0].get<double>() == doctest::Approx(0.0));
        CHECK(sum["residual"].get<double>() < 1e-14);
        const auto m = nlohmann::json::parse(group_command(GroupOp::modular, cfg, {"1,0"}, 0.0).text);
        CHECK(m["result"][0].get<double>() == doctest::Approx(std::exp(1.0)));
        CHECK_THROWS_AS(group_command(GroupOp::add, cfg, {"1,2,3", "0,0"}, 0.0), UsageError);
        CHECK_THROWS_AS(group_command(GroupOp::inv, cfg, {"1,2", "0,0"}, 0.0), UsageError);
        CHECK_THROWS_AS(parse_group_op("mul"), UsageError);
    }
    SUBCASE("dimension scan and cone tables")
    {
        const auto scan = dimension_scan_command(1.0, "3:5", {-1.0, 0.5}, Format::csv).text;
        CHECK(scan.rfind("d,max_deviation\r\n3,", 0) == 0);
        CHECK(scan.find("\r\n4,0\r\n") != std::string::npos);
        ConeRequest cone;
        cone.slopes = "1:2:1";
        cone.states = 10;
        const auto table = cone_command(cone, Format::csv).text;
        CHECK(table.find("\r\n1,") != std::string::npos);
        CHECK(table.find(",PASS\r\n2,") != std::string::npos);
        CHECK(table.substr(table.size() - 6) == "FAIL\r\n");
    }
    SUBCASE("Seiberg-Witten input")
    {
        const std::string input = R"({"variables":2,"theta":[[0,"1/2"],["-1/2",0]],
            "field":[[{"exponents":[1,0],"coefficient":"3/4"}],[{"exponents":[0,2],"coefficient":1}]],
            "alpha":[{"exponents":[1,1],"coefficient":"-2"}]})";
        const auto out = seiberg_witten_command(input);
        CHECK(out.exit_code == exit_code::ok);
        const auto j = nlohmann::json::parse(out.text);
        CHECK(j["consistent"] == true);
        CHECK(j["field_hat"].size() == 2);
        CHECK_THROWS_AS(seiberg_witten_command(R"({"variables":2,"theta":[[0,1],[1,0]],"field":[[],[]]})"), UsageError);
    }
}
