#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lindsum/family.hpp"
#include "lindsum/reliability.hpp"
#include "lindsum/sums.hpp"
#include "lindsum/validation.hpp"

namespace lindsum::cli {

namespace {

/// Invalid flag value; reported with exit status 2.
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json, Plain };

std::string render_number(double v, const char* format = "%.17g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

/// Numeric table with one printf format per column.
struct Table
{
    std::vector<std::string> header;
    std::vector<std::string> formats;
    std::vector<std::vector<double>> rows;

    explicit Table(std::vector<std::string> columns)
        : header(std::move(columns)), formats(header.size(), "%.17g")
    {
    }

    std::string cell(std::size_t row, std::size_t col) const
    {
        return render_number(rows[row][col], formats[col].c_str());
    }

    void write(std::ostream& out, Format format) const
    {
        switch (format) {
        case Format::Csv:
            write_csv(out);
            break;
        case Format::Json:
            write_json(out);
            break;
        case Format::Plain:
            write_plain(out);
            break;
        }
    }

    void write_csv(std::ostream& out) const
    {
        for (std::size_t c = 0; c < header.size(); ++c)
            out << (c ? "," : "") << header[c];
        out << '\n';
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < header.size(); ++c)
                out << (c ? "," : "") << cell(r, c);
            out << '\n';
        }
    }

    void write_json(std::ostream& out) const
    {
        nlohmann::ordered_json records = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json record;
            for (std::size_t c = 0; c < header.size(); ++c)
                record[header[c]] = row[c];
            records.push_back(std::move(record));
        }
        out << records.dump(2) << '\n';
    }

    void write_plain(std::ostream& out) const
    {
        std::vector<std::size_t> width(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) {
            width[c] = header[c].size();
            for (std::size_t r = 0; r < rows.size(); ++r)
                width[c] = std::max(width[c], cell(r, c).size());
        }
        auto pad = [](const std::string& s, std::size_t w) {
            return std::string(w - s.size(), ' ') + s;
        };
        for (std::size_t c = 0; c < header.size(); ++c)
            out << (c ? "  " : "") << pad(header[c], width[c]);
        out << '\n';
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t c = 0; c < header.size(); ++c)
                out << (c ? "  " : "") << pad(cell(r, c), width[c]);
            out << '\n';
        }
    }
};

Format parse_format(const std::string& name)
{
    if (name == "csv")
        return Format::Csv;
    if (name == "json")
        return Format::Json;
    if (name == "plain")
        return Format::Plain;
    throw UsageError("--format: expected csv, json or plain, got '" + name + "'");
}

Member require_member(const std::string& name)
{
    if (auto m = parse_member(name))
        return *m;
    std::string known;
    for (const auto& t : kMembers)
        known += (known.empty() ? "" : ", ") + std::string(t.name);
    throw UsageError("--dist: unknown distribution '" + name + "' (expected one of " + known + ")");
}

void require_positive(double value, const char* flag)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw UsageError(std::string(flag) + " must be a finite value > 0");
}

void require_at_least(long value, long minimum, const char* flag)
{
    if (value < minimum)
        throw UsageError(std::string(flag) + " must be >= " + std::to_string(minimum));
}

std::uint64_t default_seed()
{
    if (const char* env = std::getenv(kSeedEnvVar)) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw UsageError(std::string(kSeedEnvVar) + " must be an unsigned integer");
        return v;
    }
    return kDefaultSeed;
}

// Shared --dist/--theta/--n/--format options.
struct SpecFlags
{
    std::string dist;
    double theta = 0.0;
    int n = 1;
    std::string format = "csv";

    void add(CLI::App* cmd, int default_n)
    {
        n = default_n;
        cmd->add_option("--dist", dist, "Distribution: lindley, shanker, akash, ishita, pranav, "
                                        "rani, ramawadh (case-insensitive)")
            ->required();
        cmd->add_option("--theta", theta, "Rate parameter theta > 0")->required();
        cmd->add_option("--n", n, "Number of IID summands / standby units")->capture_default_str();
        cmd->add_option("--format", format, "Output format: csv, json, plain")
            ->capture_default_str();
    }

    SumSpec spec() const
    {
        const Member m = require_member(dist);
        require_positive(theta, "--theta");
        require_at_least(n, 1, "--n");
        return SumSpec(Distribution(m, theta), n);
    }
};

// ---------------------------------------------------------------------------

struct PdfCommand
{
    SpecFlags flags;
    double x = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    int points = 101;
    CLI::Option* x_opt = nullptr;
    CLI::Option* x_min_opt = nullptr;
    CLI::Option* x_max_opt = nullptr;

    void add(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("pdf", "Density, cdf and survival of S_n on an x grid");
        flags.add(cmd, 1);
        x_opt = cmd->add_option("--x", x, "Single evaluation point");
        x_min_opt = cmd->add_option("--x-min", x_min, "Grid start")->excludes(x_opt);
        x_max_opt = cmd->add_option("--x-max", x_max, "Grid end")->excludes(x_opt);
        cmd->add_option("--points", points, "Grid size")->capture_default_str();
    }

    void run(std::ostream& out) const
    {
        const SumSpec spec = flags.spec();
        const Format format = parse_format(flags.format);
        std::vector<double> grid;
        if (x_opt->count()) {
            grid = {x};
        } else {
            if (!x_min_opt->count() || !x_max_opt->count())
                throw UsageError("pdf needs --x, or both --x-min and --x-max");
            require_at_least(points, 2, "--points");
            if (!(x_max > x_min))
                throw UsageError("--x-max must exceed --x-min");
            grid = uniform_grid(x_min, x_max, points);
        }
        Table table({"x", "pdf", "cdf", "survival"});
        const ErlangMixture mixture(spec);
        for (double v : grid)
            table.rows.push_back({v, sum_pdf(spec, v), mixture.cdf(v), mixture.survival(v)});
        table.write(out, format);
    }
};

struct MomentsCommand
{
    SpecFlags flags;
    int m_max = 4;
    bool central = false;
    bool verify = false;

    void add(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("moments", "Raw moments E[S_n^m], m = 1..m-max");
        flags.add(cmd, 1);
        cmd->add_option("--m-max", m_max, "Highest moment order")->capture_default_str();
        cmd->add_flag("--central", central, "Also report mean, variance, skewness, kurtosis");
        cmd->add_flag("--verify", verify, "Cross-check each moment against quadrature");
    }

    int run(std::ostream& out, std::ostream& err) const
    {
        const SumSpec spec = flags.spec();
        const Format format = parse_format(flags.format);
        require_at_least(m_max, 1, "--m-max");

        std::vector<std::string> columns = {"m", "moment"};
        if (verify) {
            columns.push_back("quadrature");
            columns.push_back("rel_error");
        }
        Table table(columns);
        table.formats[0] = "%.0f";
        bool verified = true;
        const ErlangMixture mixture(spec);
        const double split = mixture.moment(1);
        for (int m = 1; m <= m_max; ++m) {
            const double value = mixture.moment(m);
            std::vector<double> row = {static_cast<double>(m), value};
            if (verify) {
                const auto integrand = [&](double x) { return std::pow(x, m) * sum_pdf(spec, x); };
                const QuadratureOptions options{1e-300, 1e-11, 2000};
                const double q = integrate(integrand, 0.0, split, options).value +
                                 integrate(integrand, split, kInfinity, options).value;
                const double rel = std::abs(value - q) / std::abs(q);
                row.push_back(q);
                row.push_back(rel);
                verified = verified && rel <= 1e-6;
            }
            table.rows.push_back(std::move(row));
        }

        std::optional<MomentSummary> summary;
        if (central)
            summary = moment_summary(spec);

        if (format == Format::Json) {
            std::ostringstream rows;
            table.write_json(rows);
            nlohmann::ordered_json doc;
            doc["moments"] = nlohmann::ordered_json::parse(rows.str());
            if (summary)
                doc["central"] = {{"mean", summary->mean},
                                  {"variance", summary->variance},
                                  {"skewness", summary->skewness},
                                  {"kurtosis", summary->kurtosis}};
            out << doc.dump(2) << '\n';
        } else {
            table.write(out, format);
            if (summary) {
                out << '\n' << (format == Format::Csv ? "statistic,value\n" : "statistic  value\n");
                const std::pair<const char*, double> entries[] = {
                    {"mean", summary->mean},
                    {"variance", summary->variance},
                    {"skewness", summary->skewness},
                    {"kurtosis", summary->kurtosis}};
                for (const auto& [name, v] : entries)
                    out << name << (format == Format::Csv ? "," : "  ") << render_number(v)
                        << '\n';
            }
        }
        if (!verified) {
            err << "moments: quadrature cross-check exceeded relative error 1e-6\n";
            return kVerificationFailed;
        }
        return kSuccess;
    }
};

struct ReliabilityCommand
{
    SpecFlags flags;
    double t_max = 100.0;
    int points = 101;
    double t = 0.0;
    bool compare_exponential = false;
    CLI::Option* t_opt = nullptr;

    void add(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("reliability", "Cold-standby system reliability curve");
        flags.add(cmd, 5);
        cmd->add_option("--t-max", t_max, "Mission time")->capture_default_str();
        cmd->add_option("--points", points, "Grid size")->capture_default_str();
        t_opt = cmd->add_option("--t", t, "Single evaluation time");
        cmd->add_flag("--compare-exponential", compare_exponential,
                      "Add an exponential-unit system with the same theta and n");
    }

    void run(std::ostream& out) const
    {
        const SumSpec spec = flags.spec();
        const Format format = parse_format(flags.format);
        std::vector<CurveModel> models = {StandbyModel(spec.dist, spec.n)};
        if (compare_exponential)
            models.push_back(ExponentialModel(spec.dist.theta(), spec.n));

        std::vector<std::string> columns = {"t", "R_model"};
        if (compare_exponential)
            columns.push_back("R_exponential");
        Table table(columns);

        if (t_opt->count()) {
            if (!(t >= 0.0))
                throw UsageError("--t must be >= 0");
            std::vector<double> row = {t};
            for (const auto& m : models)
                row.push_back(reliability(m, t));
            table.rows.push_back(std::move(row));
        } else {
            require_positive(t_max, "--t-max");
            require_at_least(points, 2, "--points");
            const auto curves = reliability_curve(models, t_max, points);
            for (std::size_t i = 0; i < curves.front().points.size(); ++i) {
                std::vector<double> row = {curves.front().points[i].t};
                for (const auto& c : curves)
                    row.push_back(c.points[i].r);
                table.rows.push_back(std::move(row));
            }
        }
        table.write(out, format);
    }
};

struct MttfCommand
{
    std::vector<double> thetas;
    int n = 5;
    std::string dist;
    bool two_decimals = false;
    std::string format = "csv";

    void add(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("mttf", "Lindley vs exponential MTTF comparison table");
        cmd->add_option("--theta", thetas, "Comma-separated theta values")
            ->delimiter(',')
            ->required();
        cmd->add_option("--n", n, "Number of standby units")->capture_default_str();
        cmd->add_option("--dist", dist, "Add an MTTF column for this family member");
        cmd->add_flag("--paper-style", two_decimals, "Render MTTFs with two decimals");
        cmd->add_option("--format", format, "Output format: csv, json, plain")
            ->capture_default_str();
    }

    void run(std::ostream& out) const
    {
        for (double th : thetas)
            require_positive(th, "--theta");
        require_at_least(n, 1, "--n");
        const Format fmt = parse_format(format);
        std::optional<Member> member;
        if (!dist.empty())
            member = require_member(dist);

        std::vector<std::string> columns = {"theta", "MTTF_Lindley", "MTTF_Exponential"};
        if (member) {
            std::string name(member_name(*member));
            name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
            columns.push_back("MTTF_" + name);
        }
        Table table(columns);
        if (two_decimals) {
            table.formats.assign(columns.size(), "%.2f");
            table.formats[0] = "%g";
        }
        for (const auto& row : mttf_table(thetas, n)) {
            std::vector<double> values = {row.theta, row.lindley, row.exponential};
            if (member)
                values.push_back(family_mttf(StandbyModel(Distribution(*member, row.theta), n)));
            table.rows.push_back(std::move(values));
        }
        table.write(out, fmt);
    }
};

struct SampleCommand
{
    SpecFlags flags;
    long count = 0;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;

    void add(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("sample", "Simulated draws of S_n, one per line");
        flags.add(cmd, 1);
        cmd->add_option("--count", count, "Number of draws")->required();
        seed_opt = cmd->add_option("--seed", seed, "Random seed (default: $LINDSUM_SEED or " +
                                                       std::to_string(kDefaultSeed) + ")");
    }

    void run(std::ostream& out) const
    {
        const SumSpec spec = flags.spec();
        require_at_least(count, 1, "--count");
        RandomStream rng(seed_opt->count() ? seed : default_seed());
        for (long i = 0; i < count; ++i)
            out << render_number(sample_sum(spec, rng)) << '\n';
    }
};

struct VerifyCommand
{
    std::vector<std::string> only;
    std::vector<std::string> dists;
    double theta = 0.0;
    CLI::Option* theta_opt = nullptr;
    std::string format = "text";
    std::size_t samples = 1'000'000;
    double quad_tol = 1e-10;
    std::vector<std::uint64_t> seeds;

    void add(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("verify", "Run the verification suite");
        std::string groups;
        for (const auto& g : verify_groups())
            groups += (groups.empty() ? "" : ", ") + g;
        cmd->add_option("--only", only, "Check groups to run: " + groups)->delimiter(',');
        cmd->add_option("--dist", dists, "Restrict to these members")->delimiter(',');
        theta_opt = cmd->add_option("--theta", theta, "Restrict to a single theta");
        cmd->add_option("--format", format, "Report format: text, json")->capture_default_str();
        cmd->add_option("--samples", samples, "Monte-Carlo draws per check")->capture_default_str();
        cmd->add_option("--quad-tol", quad_tol, "Quadrature oracle tolerance")
            ->capture_default_str();
        cmd->add_option("--seeds", seeds, "Comma-separated Monte-Carlo seeds")->delimiter(',');
    }

    int run(std::ostream& out) const
    {
        if (format != "text" && format != "json")
            throw UsageError("--format: expected text or json, got '" + format + "'");
        VerifyConfig config;
        const auto& groups = verify_groups();
        for (const auto& g : only) {
            if (std::find(groups.begin(), groups.end(), g) == groups.end())
                throw UsageError("--only: unknown check group '" + g + "'");
            config.only.insert(g);
        }
        for (const auto& d : dists)
            config.members.push_back(require_member(d));
        if (theta_opt->count()) {
            require_positive(theta, "--theta");
            config.theta = theta;
        }
        require_at_least(static_cast<long>(samples), 1, "--samples");
        require_positive(quad_tol, "--quad-tol");
        config.mc_samples = samples;
        config.quad_tol = quad_tol;
        if (!seeds.empty())
            config.seeds = seeds;

        const VerifyReport report = verify_all(config);
        if (format == "json")
            write_json(report, out);
        else
            write_text(report, out);
        return report.all_passed() ? kSuccess : kVerificationFailed;
    }
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sums of IID Lindley-family random variables and cold-standby reliability",
                 "lindsum"};
    app.require_subcommand(1);

    PdfCommand pdf;
    MomentsCommand moments;
    ReliabilityCommand rel;
    MttfCommand mttf;
    SampleCommand sample;
    VerifyCommand verify;
    pdf.add(app);
    moments.add(app);
    rel.add(app);
    mttf.add(app);
    sample.add(app);
    verify.add(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        // Subcommand help requests arrive as CallForHelp too; anything else
        // is a usage error.
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            out << app.help();
            return kSuccess;
        }
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    // Buffer the data so a late validation failure leaves stdout empty.
    std::ostringstream buffer;
    int status = kSuccess;
    try {
        if (app.got_subcommand("pdf"))
            pdf.run(buffer);
        else if (app.got_subcommand("moments"))
            status = moments.run(buffer, err);
        else if (app.got_subcommand("reliability"))
            rel.run(buffer);
        else if (app.got_subcommand("mttf"))
            mttf.run(buffer);
        else if (app.got_subcommand("sample"))
            sample.run(buffer);
        else if (app.got_subcommand("verify"))
            status = verify.run(buffer);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const QuadratureError& e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }
    out << buffer.str();
    return status;
}

} // namespace lindsum::cli
