#pragma once

#include "cubicsep/int_polynomial.hpp"
#include "cubicsep/numeric.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace cubicsep {

using Json = nlohmann::ordered_json;

enum class Format { json, csv };

/// Raised when a report has no flat CSV form.
class CsvUnsupported : public DomainError {
public:
    using DomainError::DomainError;
};

/// Booleans in `records` and `summary` are verification flags; nothing else
/// in a report is boolean.
struct Report {
    std::string command;
    Json parameters = Json::object();
    Json records = Json::array();
    Json summary = Json::object();
    /// Present only for flat reports.
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;

    bool passed() const;
};

std::string serialize(const Report& report, Format format);

/// "p" for integers, "p/q" otherwise.
std::string render(const Rational& r);
std::string render(const Integer& z);
/// "[lo,hi]".
std::string render(const Interval& iv);
/// "a3,a2,a1,a0".
std::string render(const IntPolynomial& p);

std::string backend_fingerprint();
const char* version();

/// Parses and runs one subcommand. 0 success, 1 a verification flag is false,
/// 2 invalid input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cubicsep
