#include "ubm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ubm/errors.hpp"

namespace ubm {

Format parse_format(const std::string& name)
{
    if (name == "json")
        return Format::Json;
    if (name == "csv")
        return Format::Csv;
    throw DomainError("format must be json or csv, got '" + name + "'");
}

std::string format_name(Format f)
{
    return f == Format::Json ? "json" : "csv";
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

MomentSequence<std::complex<double>> parse_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed moment file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("moments") || !doc["moments"].is_array())
        throw DomainError("moment file needs a 'moments' array");
    const auto& arr = doc["moments"];
    MomentSequence<std::complex<double>>::Vector m(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto& e = arr[k];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw DomainError("moment " + std::to_string(k + 1) + " must be a [re, im] pair");
        m[static_cast<Eigen::Index>(k)] = {e[0].get<double>(), e[1].get<double>()};
    }
    if (doc.contains("order")) {
        if (!doc["order"].is_number_integer() || doc["order"].get<long>() != long(arr.size()))
            throw DomainError("moment file 'order' does not match the number of moments");
    }
    return MomentSequence<std::complex<double>>(m);
}

MomentSequence<std::complex<double>> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<std::complex<double>> values;
    bool header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            if (line.rfind("n,re,im", 0) != 0)
                throw DomainError("moment CSV must start with the header n,re,im");
            header = true;
            continue;
        }
        long n = 0;
        double re = 0.0, im = 0.0;
        char tail = 0;
        if (std::sscanf(line.c_str(), "%ld,%lf,%lf%c", &n, &re, &im, &tail) < 3)
            throw DomainError("malformed CSV row at line " + std::to_string(line_no));
        if (n != long(values.size()) + 1)
            throw DomainError("CSV moments must be listed in order starting at n = 1");
        values.emplace_back(re, im);
    }
    if (!header)
        throw DomainError("empty moment CSV");
    MomentSequence<std::complex<double>>::Vector m(static_cast<Eigen::Index>(values.size()));
    for (std::size_t k = 0; k < values.size(); ++k)
        m[static_cast<Eigen::Index>(k)] = values[k];
    return MomentSequence<std::complex<double>>(m);
}

} // namespace

MomentSequence<std::complex<double>> parse_moment_sequence(const std::string& text)
{
    const auto pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos)
        throw DomainError("empty moment file");
    return text[pos] == '{' ? parse_json(text) : parse_csv(text);
}

MomentSequence<std::complex<double>> read_moment_sequence(const std::string& path)
{
    return parse_moment_sequence(read_text_file(path));
}

std::string moment_sequence_csv(const MomentSequence<std::complex<double>>& m)
{
    std::string out = "n,re,im\n";
    for (int k = 1; k <= m.order(); ++k)
        out += std::to_string(k) + "," + format_double(m(k).real()) + "," + format_double(m(k).imag()) + "\n";
    return out;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DomainError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DomainError("cannot write '" + path + "'");
    out << text;
}

} // namespace ubm
