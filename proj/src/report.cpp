#include "specball/report.hpp"

#include <cstdio>

#include "specball/fiber_scan.hpp"

namespace specball {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(Complex z) {
    return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

std::string mat2_to_json(const Mat2 &m) {
    return "[[" + format_complex(m.x11) + "," + format_complex(m.x12) + "],[" +
           format_complex(m.x21) + "," + format_complex(m.x22) + "]]";
}

namespace {

std::string escape_json(const std::string &s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

std::string detail_to_json(const DetailValue &v) {
    if (const auto *d = std::get_if<double>(&v))
        return format_double(*d);
    if (const auto *i = std::get_if<std::int64_t>(&v))
        return std::to_string(*i);
    if (const auto *b = std::get_if<bool>(&v))
        return *b ? "true" : "false";
    return "\"" + escape_json(std::get<std::string>(v)) + "\"";
}

} // namespace

std::string to_json(const ReportLine &line) {
    std::string out = "{\"check\":\"" + escape_json(line.check) + "\"";
    out += ",\"pass\":";
    out += line.pass ? "true" : "false";
    out += ",\"max_deviation\":" + format_double(line.max_deviation);
    out += ",\"samples\":" + std::to_string(line.samples);
    out += ",\"seed\":" + std::to_string(line.seed);
    out += ",\"details\":{";
    bool first = true;
    for (const auto &[key, value] : line.details) {
        if (!first)
            out += ",";
        first = false;
        out += "\"" + escape_json(key) + "\":" + detail_to_json(value);
    }
    out += "}}";
    return out;
}

std::string fiber_scan_to_csv(const FiberScan &scan) {
    std::string out = kFiberScanCsvHeader;
    out += "\n";
    for (const FiberScanRow &row : scan.rows) {
        out += format_double(row.lambda.real()) + "," + format_double(row.lambda.imag());
        out += "," + format_double(row.f12.real()) + "," + format_double(row.f12.imag());
        out += "," + format_double(row.f21.real()) + "," + format_double(row.f21.imag());
        out += "," + format_double(row.residual_contrib);
        out += "\n";
    }
    return out;
}

} // namespace specball
