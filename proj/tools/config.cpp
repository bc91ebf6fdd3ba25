#include "config.hpp"

#include "dbarrier/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <thread>

namespace dbarrier::cli {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed)
{
    if (!obj.is_object())
        throw ValidationError(where + " must be an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ValidationError("unknown key '" + key + "' in " + where);
}

double number(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key))
        throw ValidationError("missing key '" + key + "' in " + where);
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ValidationError(where + "." + key + " must be a number");
    return v.get<double>();
}

std::vector<double> number_list(const json& v, const std::string& name)
{
    std::vector<double> out;
    if (v.is_number()) {
        out.push_back(v.get<double>());
    } else if (v.is_array()) {
        for (const auto& e : v) {
            if (!e.is_number())
                throw ValidationError(name + " must contain numbers only");
            out.push_back(e.get<double>());
        }
    } else {
        throw ValidationError(name + " must be a number or an array of numbers");
    }
    return out;
}

LevyModel parse_model(const json& m)
{
    check_keys(m, "model", {"nu", "lambda_plus", "lambda_minus", "m2", "c", "mu"});
    double nu = number(m, "nu", "model");
    double lp = number(m, "lambda_plus", "model");
    double lm = number(m, "lambda_minus", "model");
    double mu = m.contains("mu") ? number(m, "mu", "model") : 0.0;
    bool has_m2 = m.contains("m2");
    bool has_c = m.contains("c");
    if (has_m2 == has_c)
        throw ValidationError("model needs exactly one of 'm2' and 'c'");
    if (has_m2)
        return LevyModel::kobol_from_m2(nu, lp, lm, number(m, "m2", "model"), mu);
    return LevyModel::kobol(nu, lp, lm, number(m, "c", "model"), mu);
}

PayoffSpec parse_payoff(const json& p)
{
    check_keys(p, "payoff", {"kind", "h_minus", "h_plus", "a"});
    if (!p.contains("kind") || !p.at("kind").is_string())
        throw ValidationError("payoff.kind must be one of no_touch, digital_put, call");
    const std::string kind = p.at("kind").get<std::string>();
    double hm = number(p, "h_minus", "payoff");
    double hp = number(p, "h_plus", "payoff");
    if (kind == "no_touch") {
        if (p.contains("a"))
            throw ValidationError("payoff.a is not used by no_touch");
        return PayoffSpec::no_touch(hm, hp);
    }
    if (kind == "digital_put")
        return PayoffSpec::digital_put(number(p, "a", "payoff"), hm, hp);
    if (kind == "call")
        return PayoffSpec::call(number(p, "a", "payoff"), hm, hp);
    throw ValidationError("payoff.kind must be one of no_touch, digital_put, call");
}

} // namespace

SeriesBlock parse_block(const std::string& name)
{
    if (name == "truncated")
        return SeriesBlock::Truncated;
    if (name == "resolvent_inverse")
        return SeriesBlock::ResolventInverse;
    if (name == "resolvent_solve")
        return SeriesBlock::ResolventSolve;
    throw ValidationError("unknown block '" + name + "'");
}

RunConfig parse_config(const json& doc)
{
    check_keys(doc, "config", {"model", "payoff", "run"});
    if (!doc.contains("model") || !doc.contains("payoff") || !doc.contains("run"))
        throw ValidationError("config needs 'model', 'payoff' and 'run' blocks");
    RunConfig c;
    c.model = parse_model(doc.at("model"));
    c.payoff = parse_payoff(doc.at("payoff"));

    const json& r = doc.at("run");
    check_keys(r, "run",
               {"T", "x", "x_range", "method", "tolerance", "dual_run", "threads", "block", "M0",
                "gwr_M", "points", "normalize"});
    if (!r.contains("T"))
        throw ValidationError("missing key 'T' in run");
    c.Ts = number_list(r.at("T"), "run.T");
    if (c.Ts.empty())
        throw ValidationError("run.T must not be empty");
    for (double T : c.Ts)
        if (!(T > 0.0))
            throw ValidationError("every maturity must be positive");

    if (r.contains("x") && r.contains("x_range"))
        throw ValidationError("run takes either 'x' or 'x_range', not both");
    if (r.contains("x")) {
        c.xs = number_list(r.at("x"), "run.x");
    } else if (r.contains("x_range")) {
        const json& xr = r.at("x_range");
        check_keys(xr, "run.x_range", {"from", "to", "n"});
        double from = number(xr, "from", "run.x_range");
        double to = number(xr, "to", "run.x_range");
        if (!xr.contains("n") || !xr.at("n").is_number_integer() || xr.at("n").get<int>() < 1)
            throw ValidationError("run.x_range.n must be a positive integer");
        int n = xr.at("n").get<int>();
        for (int i = 0; i < n; ++i)
            c.xs.push_back(n == 1 ? from : from + (to - from) * i / (n - 1));
    }

    auto get_string = [&](const char* key) {
        if (!r.at(key).is_string())
            throw ValidationError(std::string("run.") + key + " must be a string");
        return r.at(key).get<std::string>();
    };
    auto get_int = [&](const char* key) {
        if (!r.at(key).is_number_integer())
            throw ValidationError(std::string("run.") + key + " must be an integer");
        return r.at(key).get<int>();
    };
    auto get_bool = [&](const char* key) {
        if (!r.at(key).is_boolean())
            throw ValidationError(std::string("run.") + key + " must be true or false");
        return r.at(key).get<bool>();
    };
    if (r.contains("method"))
        c.method = parse_method(get_string("method"));
    if (r.contains("tolerance"))
        c.tolerance = number(r, "tolerance", "run");
    if (r.contains("dual_run"))
        c.dual_run = get_bool("dual_run");
    if (r.contains("threads")) {
        int t = get_int("threads");
        if (t < 1)
            throw ValidationError("run.threads must be at least 1");
        c.threads = static_cast<unsigned>(t);
    }
    if (r.contains("block")) {
        std::string b = get_string("block");
        if (b != "auto")
            c.block = parse_block(b);
    }
    if (r.contains("M0"))
        c.M0 = get_int("M0");
    if (r.contains("gwr_M"))
        c.gwr_M = get_int("gwr_M");
    if (r.contains("points")) {
        c.points = get_int("points");
        if (c.points < 1)
            throw ValidationError("run.points must be at least 1");
    }
    if (r.contains("normalize"))
        c.normalize = get_bool("normalize");

    // Surface request-level validation errors at parse time.
    for (double T : c.Ts)
        make_request(c, T).validate();
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed config: " + std::string(e.what()));
    }
    return parse_config(doc);
}

PriceRequest make_request(const RunConfig& c, double T)
{
    PriceRequest r;
    r.model = c.model;
    r.payoff = c.payoff;
    r.T = T;
    r.xs = c.xs;
    r.method = c.method;
    r.tolerance = c.tolerance;
    r.variants = c.dual_run ? VariantPolicy::DualRun : VariantPolicy::Single;
    r.block = c.block;
    r.M0 = c.M0;
    r.gwr_M = c.gwr_M;
    r.threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    return r;
}

} // namespace dbarrier::cli
