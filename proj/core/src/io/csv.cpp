#include "mgof/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

namespace mgof::io {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) return out;
        start = comma + 1;
    }
}

}  // namespace

est::ObservedDataset read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty CSV input");
    const auto names = split(line);
    for (const auto& n : names)
        if (n.empty()) throw DataError("CSV header has an empty column name");
    const auto k = names.size();

    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != k)
            throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(k) + " fields, found " +
                            std::to_string(cells.size()));
        for (const auto& c : cells) {
            if (c == "NA") {
                values.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(v))
                throw DataError("line " + std::to_string(line_no) + ": '" + c + "' is neither a number nor NA");
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0) throw DataError("CSV has a header but no data rows");

    Eigen::MatrixXd proxies(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < k; ++j)
            proxies(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = values[i * k + j];
    try {
        est::ObservedDataset data(names, std::move(proxies));
        for (std::size_t j = 0; j < k; ++j)
            if (data.observed_count(j) == 0) throw DataError("column '" + names[j] + "' is never observed");
        return data;
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
}

est::ObservedDataset read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return read_csv(in);
}

void write_csv(std::ostream& out, const est::ObservedDataset& data) {
    const auto& names = data.names();
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    out << '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (j) out << ',';
            if (!data.observed(i, j)) {
                out << "NA";
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", data.proxy(i, j));
                out << buf;
            }
        }
        out << '\n';
    }
}

void write_csv(const std::filesystem::path& path, const est::ObservedDataset& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_csv(out, data);
}

}  // namespace mgof::io
