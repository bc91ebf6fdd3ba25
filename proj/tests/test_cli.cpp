#include "commands.hpp"
#include "config.hpp"

#include "dbarrier/errors.hpp"

#include <doctest.h>

#include <sstream>

using namespace dbarrier;
using namespace dbarrier::cli;
using nlohmann::json;

namespace {

json base_config()
{
    return json::parse(R"({
      "model": {"nu": 1.2, "lambda_plus": 1.0, "lambda_minus": -2.0, "m2": 0.1},
      "payoff": {"kind": "no_touch", "h_minus": -0.05, "h_plus": 0.05},
      "run": {"T": 0.25, "x": [0.0, 0.07], "method": "sinh"}
    })");
}

} // namespace

TEST_CASE("config parsing")
{
    RunConfig c = parse_config(base_config());
    CHECK(c.Ts.size() == 1);
    CHECK(c.xs.size() == 2);
    CHECK(c.method == Method::SinhLaplace);
    CHECK(c.payoff.kind == PayoffKind::NoTouch);

    json d = base_config();
    d["run"].erase("x");
    d["run"]["x_range"] = {{"from", -0.04}, {"to", 0.04}, {"n", 5}};
    RunConfig r = parse_config(d);
    REQUIRE(r.xs.size() == 5);
    CHECK(r.xs[4] == doctest::Approx(0.04));
}

TEST_CASE("config validation errors")
{
    json unknown = base_config();
    unknown["model"]["sigma"] = 0.1;
    CHECK_THROWS_AS(parse_config(unknown), ValidationError);

    json both = base_config();
    both["model"]["c"] = 0.1;
    CHECK_THROWS_AS(parse_config(both), ValidationError);

    json kind = base_config();
    kind["payoff"]["kind"] = "barrier";
    CHECK_THROWS_AS(parse_config(kind), ValidationError);

    json strike = base_config();
    strike["payoff"]["kind"] = "call";
    strike["payoff"]["a"] = 0.2;
    CHECK_THROWS_AS(parse_config(strike), ValidationError);

    json maturity = base_config();
    maturity["run"]["T"] = {0.25, -1.0};
    CHECK_THROWS_AS(parse_config(maturity), ValidationError);

    json method = base_config();
    method["run"]["method"] = "euler";
    CHECK_THROWS_AS(parse_config(method), ValidationError);

    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ValidationError);
}

TEST_CASE("price CSV")
{
    RunConfig c = parse_config(base_config());
    c.threads = 1;
    std::ostringstream out;
    cmd_price(c, out, false);
    const std::string s = out.str();
    CHECK(s.rfind("x,T,value,error_estimate,method,elapsed_ms,flag\r\n", 0) == 0);
    CHECK(s.find("0,0.25,0.21623923726355") != std::string::npos);
    CHECK(s.find("0.070000000000000007,0.25,0,0,sinh,0,knocked\r\n") != std::string::npos);

    std::ostringstream again;
    cmd_price(c, again, false);
    CHECK(again.str() == s);
}

TEST_CASE("curve CSV with normalization")
{
    json d = base_config();
    d["run"].erase("x");
    d["run"]["points"] = 3;
    d["run"]["normalize"] = true;
    RunConfig c = parse_config(d);
    std::ostringstream out;
    cmd_curve(c, out);
    std::istringstream in(out.str());
    std::string line;
    int rows = 0;
    std::getline(in, line);
    CHECK(line == "x,T,value,error_estimate,normalized,flag\r");
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 3);
}

TEST_CASE("table CSV")
{
    TableOptions o;
    o.threads = 1;
    std::ostringstream out;
    cmd_table("table1", o, out, false);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "table,T,x,value,reference,deviation,error_estimate,method,elapsed_ms\r");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 15);
    CHECK_THROWS_AS(cmd_table("table7", o, out, false), ValidationError);
}

TEST_CASE("selftest passes and a coarse step fails")
{
    std::ostringstream ok;
    CHECK(cmd_selftest(ok, 1.0));
    std::ostringstream bad;
    CHECK_FALSE(cmd_selftest(bad, 4.0));
    CHECK(bad.str().find("FAIL wiener_hopf_identity") != std::string::npos);
}
