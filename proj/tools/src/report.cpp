#include "qst/cli/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace qst::cli {

namespace {

std::optional<double> as_number(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

std::string csv_escape(std::string_view field)
{
    const bool quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!quote) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Table::Table(std::vector<std::string> header) : header_(std::move(header))
{
    if (header_.empty()) throw std::invalid_argument("table needs at least one column");
}

void Table::add_row(std::vector<std::string> row)
{
    if (row.size() != header_.size()) throw std::invalid_argument("row width differs from header");
    rows_.push_back(std::move(row));
}

std::string Table::to_csv() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += csv_escape(cells[i]);
        }
        out += "\r\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

std::string Table::to_json() const
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (const auto v = as_number(r[i])) obj[header_[i]] = *v;
            else obj[header_[i]] = r[i];
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

bool Report::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::merge(const Report& other)
{
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    summary.insert(summary.end(), other.summary.begin(), other.summary.end());
}

Table Report::table() const
{
    Table t({"suite", "check", "result", "residual", "anchor", "detail"});
    for (const auto& c : checks)
        t.add_row({c.suite, c.name, c.passed ? "PASS" : "FAIL", c.residual ? format_number(*c.residual) : "",
                   c.anchor, c.detail});
    return t;
}

std::string Report::to_json() const
{
    nlohmann::ordered_json j;
    j["passed"] = passed();
    auto summary_obj = nlohmann::ordered_json::object();
    for (const auto& [k, v] : summary) summary_obj[k] = v;
    j["summary"] = std::move(summary_obj);
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json row;
        row["suite"] = c.suite;
        row["check"] = c.name;
        row["result"] = c.passed ? "PASS" : "FAIL";
        if (c.residual && std::isfinite(*c.residual)) row["residual"] = *c.residual;
        else if (c.residual) row["residual"] = format_number(*c.residual);
        else row["residual"] = nullptr;
        row["anchor"] = c.anchor;
        row["detail"] = c.detail;
        arr.push_back(std::move(row));
    }
    j["checks"] = std::move(arr);
    return j.dump(2) + "\n";
}

}  // namespace qst::cli
