#include "etd/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace etd::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& value) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

ExtendedDiagram parse_diagram(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<std::pair<int, Point>> pairs;
    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty()) continue;
        const auto fields = split(content);
        if (!header) {
            if (fields.size() != 3 || fields[0] != "dim" || fields[1] != "birth" || fields[2] != "death")
                throw DataError("expected header 'dim,birth,death'", line_no);
            header = true;
            continue;
        }
        if (fields.size() != 3) throw DataError("expected 3 fields, got " + std::to_string(fields.size()), line_no);
        int dim = 0;
        Point pt;
        if (!parse_number(fields[0], dim) || dim < 0) throw DataError("malformed dimension", line_no);
        if (!parse_number(fields[1], pt.birth)) throw DataError("malformed birth", line_no);
        if (!parse_number(fields[2], pt.death)) throw DataError("malformed death", line_no);
        if (!std::isfinite(pt.birth) || !std::isfinite(pt.death)) throw DataError("non-finite coordinate", line_no);
        if (pt.birth > pt.death) throw DataError("birth > death", line_no);
        pairs.emplace_back(dim, pt);
    }
    if (!header) throw DataError("missing header 'dim,birth,death'", line_no ? line_no : 1);
    return ExtendedDiagram::from_pairs(pairs);
}

ExtendedDiagram read_diagram(const std::filesystem::path& path) {
    auto in = open_input(path);
    try {
        return parse_diagram(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void format_diagram(std::ostream& out, const ExtendedDiagram& diagram) {
    out << "dim,birth,death\n";
    for (const auto& pd : diagram.diagrams())
        for (const auto& x : pd.sorted_points())
            out << pd.dimension() << ',' << format_double(x.birth) << ',' << format_double(x.death) << '\n';
}

void write_diagram(const ExtendedDiagram& diagram, const std::filesystem::path& path) {
    std::ostringstream os;
    format_diagram(os, diagram);
    write_atomically(path, os.str());
}

void format_matrix(std::ostream& out, const DistanceMatrix& matrix) {
    for (const auto& l : matrix.labels) out << ',' << l;
    out << '\n';
    for (Eigen::Index i = 0; i < matrix.size(); ++i) {
        out << matrix.labels[std::size_t(i)];
        for (Eigen::Index j = 0; j < matrix.size(); ++j) out << ',' << format_double(matrix.values(i, j));
        out << '\n';
    }
}

DistanceMatrix parse_matrix(std::istream& in) {
    DistanceMatrix m;
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty()) continue;
        const auto fields = split(content);
        if (m.labels.empty() && rows.empty()) {
            if (fields.size() < 2 || !fields[0].empty()) throw DataError("expected matrix header ',label,...'", line_no);
            for (std::size_t i = 1; i < fields.size(); ++i) m.labels.emplace_back(fields[i]);
            continue;
        }
        if (fields.size() != m.labels.size() + 1) throw DataError("matrix row has wrong field count", line_no);
        if (fields[0] != m.labels[rows.size()]) throw DataError("matrix row label does not match header", line_no);
        std::vector<double> row(m.labels.size());
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!parse_number(fields[j + 1], row[j]) || !(row[j] >= 0.0))
                throw DataError("malformed matrix entry", line_no);
        rows.push_back(std::move(row));
        if (rows.size() > m.labels.size()) throw DataError("too many matrix rows", line_no);
    }
    if (m.labels.empty() || rows.size() != m.labels.size()) throw DataError("matrix is not square", line_no);
    const Eigen::Index n = Eigen::Index(rows.size());
    m.values.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m.values(i, j) = rows[std::size_t(i)][std::size_t(j)];
    return m;
}

DistanceMatrix read_matrix(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_matrix(in);
}

std::vector<std::pair<std::string, std::string>> read_labels(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty()) continue;
        const auto fields = split(content);
        if (!header) {
            if (fields.size() != 2 || fields[0] != "id" || fields[1] != "label")
                throw DataError("expected header 'id,label'", line_no);
            header = true;
            continue;
        }
        if (fields.size() != 2 || fields[0].empty()) throw DataError("malformed label row", line_no);
        out.emplace_back(fields[0], fields[1]);
    }
    if (!header) throw DataError("missing header 'id,label'", 1);
    return out;
}

void write_labels(const std::vector<std::pair<std::string, std::string>>& labels, const std::filesystem::path& path) {
    std::ostringstream os;
    os << "id,label\n";
    for (const auto& [id, label] : labels) os << id << ',' << label << '\n';
    write_atomically(path, os.str());
}

void format_curves(std::ostream& out, const std::vector<TopologicalCurve>& curves) {
    out << "metric,dimension,index,value\n";
    for (const auto& c : curves)
        for (std::size_t j = 0; j < c.values.size(); ++j)
            for (std::size_t i = 0; i < c.values[j].size(); ++i)
                out << c.metric << ',' << j << ',' << i << ',' << format_double(c.values[j][i]) << '\n';
}

void format_bench(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "metric,M,k,p,angles,median_ms,trials\n";
    for (const auto& r : rows)
        out << r.metric << ',' << r.M << ',' << r.k << ',' << format_double(r.p) << ',' << r.angles << ','
            << format_double(r.median_ms) << ',' << r.trials << '\n';
}

std::vector<SyntheticClassSpec> parse_synthetic_spec(const std::string& json_text) {
    std::vector<SyntheticClassSpec> out;
    try {
        const auto doc = nlohmann::json::parse(json_text);
        for (const auto& c : doc.at("classes")) {
            SyntheticClassSpec s;
            s.class_id = c.at("class_id").get<int>();
            s.n_samples = c.value("n_samples", s.n_samples);
            s.n_points = c.value("n_points", s.n_points);
            s.center_lifetimes = c.value("center_lifetimes", s.center_lifetimes);
            s.birth_center = c.value("birth_center", s.birth_center);
            s.noise = c.value("noise", s.noise);
            s.seed = c.value("seed", s.seed);
            s.check();
            out.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("spec JSON: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw DataError(e.what());
    }
    return out;
}

std::vector<SyntheticClassSpec> read_synthetic_spec(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_synthetic_spec(os.str());
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + path.string());
        out << contents;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw DataError("write failed for " + path.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw DataError("cannot move output into place at " + path.string());
    }
}

} // namespace etd::io
