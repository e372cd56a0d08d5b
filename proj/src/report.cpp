#include <cctype>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "lindsum/validation.hpp"

namespace lindsum {

namespace {

std::string number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_text(const VerifyReport& report, std::ostream& out)
{
    for (const auto& c : report.checks) {
        std::string status(status_name(c.status));
        for (auto& ch : status)
            ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        out << status << (status.size() < 5 ? std::string(5 - status.size(), ' ') : "") << ' '
            << c.id << "  value=" << number(c.value) << "  bound=" << number(c.bound);
        if (!c.detail.empty())
            out << "  (" << c.detail << ')';
        out << '\n';
    }
    out << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Fail)
        << " failed, " << report.count(CheckStatus::Error) << " errors\n";
}

void write_json(const VerifyReport& report, std::ostream& out)
{
    nlohmann::json records = nlohmann::json::array();
    for (const auto& c : report.checks) {
        nlohmann::json record = {
            {"check_id", c.id},
            {"status", std::string(status_name(c.status))},
            {"value", c.value},
            {"bound", c.bound},
        };
        records.push_back(std::move(record));
    }
    out << records.dump(2) << '\n';
}

} // namespace lindsum
