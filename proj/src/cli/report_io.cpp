#include "cli/report_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace ocy::cli {

std::string format_real(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (value == 0.0)
        return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

namespace {

std::string fixed6(double value)
{
    if (value == 0.0)
        value = 0.0;
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 6);
    return std::string(buf, res.ptr);
}

std::string json_number(double value)
{
    const std::string text = format_real(value);
    return std::isfinite(value) ? text : "\"" + text + "\"";
}

constexpr std::string_view entry_columns =
    "feature,renorm,reference,delta_s,kl,support_mismatch_mass,residual_mean_gap,clipped_mass,skipped,skip_reason";

void write_entry_json(const ReportEntry& e, std::ostream& out, std::string_view indent)
{
    const auto num = [&](double v) { return e.skipped ? std::string("null") : json_number(v); };
    out << "{\n"
        << indent << "  \"feature\": \"" << to_string(e.mode.feature) << "\",\n"
        << indent << "  \"renorm\": \"" << to_string(e.mode.renorm) << "\",\n"
        << indent << "  \"reference\": \"" << to_string(e.mode.reference) << "\",\n"
        << indent << "  \"delta_s\": " << num(e.value.delta_s) << ",\n"
        << indent << "  \"kl\": " << num(e.value.kl) << ",\n"
        << indent << "  \"support_mismatch_mass\": " << num(e.value.support_mismatch_mass) << ",\n"
        << indent << "  \"residual_mean_gap\": " << num(e.residual_mean_gap) << ",\n"
        << indent << "  \"clipped_mass\": " << num(e.clipped_mass) << ",\n"
        << indent << "  \"skipped\": " << (e.skipped ? "true" : "false") << ",\n"
        << indent << "  \"skip_reason\": " << (e.skipped ? "\"" + json_escape(e.skip_reason) + "\"" : "null")
        << "\n"
        << indent << "}";
}

void write_image_json(const ImageId& id, std::ostream& out)
{
    out << "{\"path\": \"" << json_escape(id.path) << "\", \"sha256\": \"" << json_escape(id.sha256) << "\"}";
}

} // namespace

std::string json_escape(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(c)));
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_report_json(const OrderReport& report, std::ostream& out)
{
    out << "{\n  \"image_a\": ";
    write_image_json(report.image_a, out);
    out << ",\n  \"image_b\": ";
    write_image_json(report.image_b, out);
    out << ",\n  \"epsilon\": " << json_number(report.epsilon) << ",\n";
    out << "  \"strict\": " << (report.strict ? "true" : "false") << ",\n";
    out << "  \"headline\": ";
    write_entry_json(report.headline, out, "  ");
    out << ",\n  \"entries\": [";
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        out << (i == 0 ? "\n    " : ",\n    ");
        write_entry_json(report.entries[i], out, "    ");
    }
    out << "\n  ]\n}\n";
}

void write_report_csv(const OrderReport& report, std::ostream& out)
{
    out << entry_columns << "\n";
    for (const ReportEntry& e : report.entries) {
        const auto num = [&](double v) { return e.skipped ? std::string() : format_real(v); };
        out << to_string(e.mode.feature) << ',' << to_string(e.mode.renorm) << ','
            << to_string(e.mode.reference) << ',' << num(e.value.delta_s) << ',' << num(e.value.kl) << ','
            << num(e.value.support_mismatch_mass) << ',' << num(e.residual_mean_gap) << ','
            << num(e.clipped_mass) << ',' << (e.skipped ? "true" : "false") << ','
            << csv_field(e.skip_reason) << "\n";
    }
}

std::string headline_line(const OrderReport& report)
{
    return "OCY(headline, gray/mass/first): " + format_real(headline_ocy(report));
}

void write_histogram_csv(const Distribution& d, std::ostream& out)
{
    out << "bin_index,bin_level,mass\n";
    for (std::size_t b = 0; b < d.size(); ++b)
        out << b << ',' << fixed6(bin_level(d.kind(), b)) << ',' << format_real(d.mass(b)) << "\n";
}

} // namespace ocy::cli
