#include "commands.hpp"

#include "dbarrier/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace dbarrier;
using namespace dbarrier::cli;

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::string> method;
    std::optional<double> tol;
    std::optional<unsigned> threads;
    bool dual_run = false;
    bool normalize = false;
    std::optional<int> points;
    std::string out_path;
    bool no_timing = false;
};

RunConfig resolve_config(const Overrides& o)
{
    RunConfig c = load_config(o.config_path);
    if (o.method)
        c.method = parse_method(*o.method);
    if (o.tol)
        c.tolerance = *o.tol;
    if (o.threads)
        c.threads = *o.threads;
    if (o.dual_run)
        c.dual_run = true;
    if (o.normalize)
        c.normalize = true;
    if (o.points)
        c.points = *o.points;
    for (double T : c.Ts)
        make_request(c, T).validate();
    return c;
}

// Runs fn into a buffer and writes it to the --out file or standard output,
// so a failing run leaves no partial CSV behind.
template <class Fn>
void with_output(const std::string& path, Fn fn)
{
    std::ostringstream buf;
    fn(buf);
    if (path.empty()) {
        std::cout << buf.str();
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ValidationError("cannot open output file '" + path + "'");
    f << buf.str();
    if (!f)
        throw ValidationError("failed writing output file '" + path + "'");
}

int fail(int code, const char* kind, const std::string& msg)
{
    std::string line = msg;
    for (char& ch : line)
        if (ch == '\n' || ch == '\r')
            ch = ' ';
    std::cerr << "error: " << kind << ": " << line << '\n';
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Double-barrier option pricer for KoBoL processes"};
    app.require_subcommand(1);

    Overrides o;
    auto add_run_flags = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON config file")->required();
        sub->add_option("--method", o.method, "Laplace inversion: sinh, gwr or auto");
        sub->add_option("--tol", o.tol, "Target error tolerance");
        sub->add_option("--threads", o.threads, "Worker threads (default: all cores)");
        sub->add_flag("--dual-run", o.dual_run, "Price twice with different contours and report the gap");
        sub->add_option("--out", o.out_path, "Write CSV to this file instead of standard output");
    };

    CLI::App* price_cmd = app.add_subcommand("price", "Price the options described by a config");
    add_run_flags(price_cmd);
    price_cmd->add_flag("--no-timing", o.no_timing, "Write 0 in the elapsed_ms column");

    CLI::App* curve_cmd = app.add_subcommand("curve", "Price on a dense spot grid");
    add_run_flags(curve_cmd);
    curve_cmd->add_flag("--normalize", o.normalize, "Add the (x - h_minus)^(nu/2) normalized column");
    curve_cmd->add_option("--points", o.points, "Number of interior grid points");

    std::string table_name;
    CLI::App* table_cmd = app.add_subcommand("table", "Reproduce a built-in reference table");
    table_cmd->add_option("name", table_name, "table1 .. table6")->required();
    table_cmd->add_option("--method", o.method, "Laplace inversion: sinh, gwr or auto");
    table_cmd->add_option("--tol", o.tol, "Target error tolerance");
    table_cmd->add_option("--threads", o.threads, "Worker threads (default: all cores)");
    table_cmd->add_flag("--dual-run", o.dual_run, "Price twice with different contours");
    table_cmd->add_option("--out", o.out_path, "Write CSV to this file instead of standard output");
    table_cmd->add_flag("--no-timing", o.no_timing, "Write 0 in the elapsed_ms column");

    double step_factor = 1.0;
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the built-in property suites");
    selftest_cmd->add_option("--step-factor", step_factor, "Multiply the quadrature steps (misconfiguration check)")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "validation", e.what());
    }

    try {
        if (price_cmd->parsed()) {
            RunConfig c = resolve_config(o);
            with_output(o.out_path, [&](std::ostream& s) { cmd_price(c, s, !o.no_timing); });
        } else if (curve_cmd->parsed()) {
            RunConfig c = resolve_config(o);
            with_output(o.out_path, [&](std::ostream& s) { cmd_curve(c, s); });
        } else if (table_cmd->parsed()) {
            TableOptions t;
            if (o.method)
                t.method = parse_method(*o.method);
            if (o.tol)
                t.tolerance = *o.tol;
            if (o.threads)
                t.threads = *o.threads;
            t.dual_run = o.dual_run;
            with_output(o.out_path, [&](std::ostream& s) { cmd_table(table_name, t, s, !o.no_timing); });
        } else if (selftest_cmd->parsed()) {
            return cmd_selftest(std::cout, step_factor) ? 0 : 1;
        }
    } catch (const ValidationError& e) {
        return fail(2, "validation", e.what());
    } catch (const DomainError& e) {
        return fail(2, "validation", e.what());
    } catch (const NumericalError& e) {
        return fail(3, "numerical", e.what());
    } catch (const std::exception& e) {
        return fail(3, "numerical", e.what());
    }
    return 0;
}
