#include "tlap/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "tlap/core.hpp"

namespace tlap {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void append_double(std::string& out, double v) {
    if (!std::isfinite(v))
        throw InvalidInput("dump_report: non-finite number in report");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void dump_rec(std::string& out, const Json& j, int depth) {
    const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, val] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                append_escaped(out, key);
                out += ": ";
                dump_rec(out, val, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad_in;
                dump_rec(out, j[i], depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::string:
            append_escaped(out, j.get<std::string>());
            return;
        case Json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case Json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            return;
        case Json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            return;
        case Json::value_t::number_float:
            append_double(out, j.get<double>());
            return;
        case Json::value_t::null:
            out += "null";
            return;
        default:
            throw InvalidInput("dump_report: unsupported JSON value type");
    }
}

}  // namespace

std::string dump_report(const Json& j) {
    std::string out;
    dump_rec(out, j, 0);
    out += "\n";
    return out;
}

void write_report(const std::string& path, const Json& j) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("write_report: cannot open '" + path + "'");
    f << dump_report(j);
    if (!f) throw InvalidInput("write_report: failed writing '" + path + "'");
}

}  // namespace tlap
