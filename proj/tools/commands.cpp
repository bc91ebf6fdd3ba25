#include "commands.hpp"

#include "dbarrier/errors.hpp"
#include "dbarrier/reference_tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>
#include <vector>

namespace dbarrier::cli {

namespace {

// RFC 4180 rows: CRLF line ends, fields quoted only when needed.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& field(const std::string& s)
    {
        sep();
        if (s.find_first_of(",\"\r\n") == std::string::npos) {
            out_ << s;
        } else {
            out_ << '"';
            for (char c : s) {
                if (c == '"')
                    out_ << '"';
                out_ << c;
            }
            out_ << '"';
        }
        return *this;
    }

    CsvWriter& number(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return field(buf);
    }

    CsvWriter& empty() { return field(""); }

    void end_row()
    {
        out_ << "\r\n";
        first_ = true;
    }

private:
    void sep()
    {
        if (!first_)
            out_ << ',';
        first_ = false;
    }

    std::ostream& out_;
    bool first_ = true;
};

std::string flag_text(const PriceReport& rep, std::size_t i)
{
    if (rep.knocked[i])
        return "knocked";
    std::string f;
    if (rep.fell_back)
        f = "gwr_fallback";
    if (rep.degraded)
        f += f.empty() ? "degraded" : ";degraded";
    return f;
}

void require_spots(const RunConfig& c)
{
    if (c.xs.empty())
        throw ValidationError("run needs 'x' or 'x_range'");
}

} // namespace

void cmd_price(const RunConfig& config, std::ostream& out, bool timing)
{
    require_spots(config);
    CsvWriter csv(out);
    for (const char* h : {"x", "T", "value", "error_estimate", "method", "elapsed_ms", "flag"})
        csv.field(h);
    csv.end_row();
    for (double T : config.Ts) {
        PriceReport rep = price(make_request(config, T));
        for (std::size_t i = 0; i < rep.xs.size(); ++i) {
            csv.number(rep.xs[i]).number(T).number(rep.values[i]).number(rep.error_estimates[i]);
            csv.field(method_name(rep.method));
            csv.number(timing ? std::round(rep.wall_ms * 1000.0) / 1000.0 : 0.0);
            csv.field(flag_text(rep, i));
            csv.end_row();
        }
    }
}

void cmd_table(const std::string& name, const TableOptions& opt, std::ostream& out, bool timing)
{
    const ReferenceTable& table = reference_table(name);
    CsvWriter csv(out);
    for (const char* h : {"table", "T", "x", "value", "reference", "deviation", "error_estimate",
                          "method", "elapsed_ms"})
        csv.field(h);
    csv.end_row();
    for (const ReferenceRow& row : table.rows) {
        PriceRequest req = reference_request(table, row.T);
        req.method = opt.method;
        req.tolerance = opt.tolerance;
        req.variants = opt.dual_run ? VariantPolicy::DualRun : VariantPolicy::Single;
        req.threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
        PriceReport rep = price(req);
        for (std::size_t i = 0; i < rep.xs.size(); ++i) {
            csv.field(table.name).number(row.T).number(rep.xs[i]).number(rep.values[i]);
            csv.number(row.values[i]).number(rep.values[i] - row.values[i]);
            csv.number(rep.error_estimates[i]).field(method_name(rep.method));
            csv.number(timing ? std::round(rep.wall_ms * 1000.0) / 1000.0 : 0.0);
            csv.end_row();
        }
    }
}

void cmd_curve(const RunConfig& config, std::ostream& out)
{
    RunConfig c = config;
    if (c.points > 0)
        c.xs = interior_grid(c.payoff.h_minus, c.payoff.h_plus, c.points);
    require_spots(c);
    CsvWriter csv(out);
    csv.field("x").field("T").field("value").field("error_estimate");
    if (c.normalize)
        csv.field("normalized");
    csv.field("flag");
    csv.end_row();
    for (double T : c.Ts) {
        for (const CurvePoint& p : price_curve(make_request(c, T), c.normalize)) {
            csv.number(p.x).number(T).number(p.value).number(p.error_estimate);
            if (c.normalize) {
                if (p.knocked)
                    csv.empty();
                else
                    csv.number(p.normalized);
            }
            csv.field(p.knocked ? "knocked" : "");
            csv.end_row();
        }
    }
}

} // namespace dbarrier::cli
