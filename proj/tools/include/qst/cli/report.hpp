#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qst::cli {

// Shortest round-trip representation, so equal doubles always print as equal bytes.
std::string format_number(double x);

// RFC 4180: quote fields holding a comma, quote, CR or LF; double embedded quotes.
std::string csv_escape(std::string_view field);

class Table {
public:
    explicit Table(std::vector<std::string> header);

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }
    void add_row(std::vector<std::string> row);

    // CRLF line endings as in RFC 4180.
    std::string to_csv() const;
    // Array of objects keyed by the header; cells that parse as numbers are emitted as numbers.
    std::string to_json() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Check {
    std::string suite;
    std::string name;
    bool passed = false;
    std::optional<double> residual;
    std::string anchor;  // the result this check instantiates
    std::string detail;
};

struct Report {
    std::vector<Check> checks;
    std::vector<std::pair<std::string, std::string>> summary;

    bool passed() const;
    void add(Check c) { checks.push_back(std::move(c)); }
    void merge(const Report& other);

    Table table() const;
    std::string to_csv() const { return table().to_csv(); }
    std::string to_json() const;
};

}  // namespace qst::cli
