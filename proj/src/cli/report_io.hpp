#ifndef OCY_CLI_REPORT_IO_HPP
#define OCY_CLI_REPORT_IO_HPP

#include "ocy/distribution.hpp"
#include "ocy/order.hpp"

#include <ostream>
#include <string>
#include <string_view>

namespace ocy::cli {

/// 9 significant digits, '.' decimal point regardless of locale, "inf",
/// "-inf" and "nan" spelled out, negative zero printed as "0".
std::string format_real(double value);

std::string json_escape(std::string_view text);

/// RFC 4180 quoting, only when the field needs it.
std::string csv_field(std::string_view text);

/// Fixed field order; non-finite numbers are written as strings and the
/// numeric fields of skipped entries as null.
void write_report_json(const OrderReport& report, std::ostream& out);

/// One row per entry, columns named as in the JSON entries.
void write_report_csv(const OrderReport& report, std::ostream& out);

/// "OCY(headline, gray/mass/first): <delta_s>"
std::string headline_line(const OrderReport& report);

/// bin_index,bin_level,mass with every bin listed, levels to 6 decimals.
void write_histogram_csv(const Distribution& d, std::ostream& out);

} // namespace ocy::cli

#endif
