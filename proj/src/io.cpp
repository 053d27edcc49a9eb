#include "compmat/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace compmat::io {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& token, const std::string& source, std::size_t line) {
    const std::string t = trim(token);
    if (t.empty()) throw ParseError(source, line, "empty numeric field");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) {
        throw ParseError(source, line, "'" + t + "' is not a number");
    }
    if (!std::isfinite(v)) {
        throw ParseError(source, line, "non-finite value '" + t + "'");
    }
    return v;
}

std::size_t parse_size(const std::string& token, const std::string& source, std::size_t line) {
    const std::string t = trim(token);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(source, line, "'" + t + "' is not a non-negative integer");
    }
    return static_cast<std::size_t>(std::stoull(t));
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

DenseRealMatrix read_matrix_market(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) {
        throw ParseError(source, 1, "empty file");
    }
    ++lineno;
    const auto banner = split_ws(lower(trim(line)));
    if (banner.size() < 4 || banner[0] != "%%matrixmarket" || banner[1] != "matrix") {
        throw ParseError(source, lineno, "missing %%MatrixMarket matrix banner");
    }
    if (banner[2] != "coordinate") {
        throw ParseError(source, lineno, "only the coordinate format is supported");
    }
    const std::string& field = banner[3];
    if (field != "real" && field != "integer" && field != "pattern") {
        throw ParseError(source, lineno, "unsupported field type '" + field + "'");
    }
    if (banner.size() >= 5 && banner[4] != "general") {
        throw ParseError(source, lineno, "only general symmetry is supported");
    }

    // Size line: first non-comment, non-blank line after the banner.
    std::size_t m = 0, n = 0, nnz = 0;
    bool have_size = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        const auto parts = split_ws(t);
        if (parts.size() != 3) {
            throw ParseError(source, lineno, "size line must read 'rows cols nnz'");
        }
        m = parse_size(parts[0], source, lineno);
        n = parse_size(parts[1], source, lineno);
        nnz = parse_size(parts[2], source, lineno);
        have_size = true;
        break;
    }
    if (!have_size) throw ParseError(source, lineno, "missing size line");
    if (m == 0 || n == 0) {
        throw ParseError(source, lineno, "dimensions must be positive");
    }

    DenseRealMatrix a(m, n);
    std::vector<char> seen(m * n, 0);
    std::size_t read = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        if (read == nnz) {
            throw ParseError(source, lineno, "more entries than the declared nnz");
        }
        const auto parts = split_ws(t);
        const std::size_t expected = (field == "pattern") ? 2 : 3;
        if (parts.size() != expected) {
            throw ParseError(source, lineno, "entry line must read 'row col" +
                                                 std::string(field == "pattern" ? "'" : " value'"));
        }
        const std::size_t i = parse_size(parts[0], source, lineno);
        const std::size_t j = parse_size(parts[1], source, lineno);
        if (i < 1 || i > m || j < 1 || j > n) {
            throw ParseError(source, lineno, "coordinate (" + parts[0] + ", " + parts[1] +
                                                 ") is outside the declared shape");
        }
        if (seen[(i - 1) * n + (j - 1)]) {
            throw ParseError(source, lineno, "duplicate coordinate (" + parts[0] + ", " + parts[1] + ")");
        }
        seen[(i - 1) * n + (j - 1)] = 1;
        a(i - 1, j - 1) = (field == "pattern") ? 1.0 : parse_double(parts[2], source, lineno);
        ++read;
    }
    if (read != nnz) {
        throw ParseError(source, lineno, "declared nnz " + std::to_string(nnz) + " but found " +
                                             std::to_string(read) + " entries");
    }
    return a;
}

DenseRealMatrix read_dense_csv(std::istream& in, const std::string& source) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split_commas(line);
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f, source, lineno));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError(source, lineno, "row has " + std::to_string(row.size()) +
                                                 " fields, expected " +
                                                 std::to_string(rows.front().size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(source, lineno ? lineno : 1, "no data rows");
    DenseRealMatrix a(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.front().size(); ++j) {
            a(i, j) = rows[i][j];
        }
    }
    return a;
}

void write_matrix_market(const DenseRealMatrix& a, std::ostream& out) {
    std::size_t nnz = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) != 0.0) ++nnz;
        }
    }
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << " " << a.cols() << " " << nnz << "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) != 0.0) {
                out << (i + 1) << " " << (j + 1) << " " << format_double(a(i, j)) << "\n";
            }
        }
    }
}

void write_dense_csv(const DenseRealMatrix& a, std::ostream& out) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out << ",";
            out << format_double(a(i, j));
        }
        out << "\n";
    }
}

}  // namespace

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

MatrixFormat infer_matrix_format(const std::string& path) {
    const std::string p = lower(path);
    if (ends_with(p, ".mtx") || ends_with(p, ".mm")) return MatrixFormat::matrix_market;
    if (ends_with(p, ".csv")) return MatrixFormat::dense_csv;
    std::ifstream in(path);
    std::string first;
    if (in && std::getline(in, first) && lower(trim(first)).rfind("%%matrixmarket", 0) == 0) {
        return MatrixFormat::matrix_market;
    }
    return MatrixFormat::dense_csv;
}

DenseRealMatrix read_matrix(const std::string& path) {
    const MatrixFormat format = infer_matrix_format(path);
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return read_matrix(in, format, path);
}

DenseRealMatrix read_matrix(std::istream& in, MatrixFormat format, const std::string& source) {
    return format == MatrixFormat::matrix_market ? read_matrix_market(in, source)
                                                 : read_dense_csv(in, source);
}

void write_matrix(const DenseRealMatrix& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_matrix(a, out, infer_matrix_format(path));
}

void write_matrix(const DenseRealMatrix& a, std::ostream& out, MatrixFormat format) {
    if (format == MatrixFormat::matrix_market) {
        write_matrix_market(a, out);
    } else {
        write_dense_csv(a, out);
    }
}

Injection read_injection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return read_injection(in, path);
}

Injection read_injection(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t lineno = 0;
    std::string header;
    while (std::getline(in, line)) {
        ++lineno;
        if (!trim(line).empty()) {
            header = trim(line);
            break;
        }
    }
    if (header.empty()) throw ParseError(source, lineno ? lineno : 1, "missing 'm n' header line");
    const auto head = split_ws(header);
    if (head.size() != 2) {
        throw ParseError(source, lineno, "header line must read 'm n'");
    }
    const std::size_t m = parse_size(head[0], source, lineno);
    const std::size_t n = parse_size(head[1], source, lineno);
    if (m == 0 || n == 0) {
        throw ParseError(source, lineno, "m and n must be positive");
    }
    if (m > n) {
        throw ParseError(source, lineno,
                         "m > n: an injective map needs at least as many targets as sources");
    }

    std::string body;
    const std::size_t header_line = lineno;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (!body.empty()) throw ParseError(source, lineno, "unexpected extra line");
        body = trim(line);
    }
    if (body.empty()) {
        throw ParseError(source, header_line + 1, "missing target line");
    }
    const auto toks = split_ws(body);
    if (toks.size() != m) {
        throw ParseError(source, header_line + 1,
                         "expected " + std::to_string(m) + " targets, found " +
                             std::to_string(toks.size()));
    }
    std::vector<std::size_t> targets(m);
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t t = parse_size(toks[i], source, header_line + 1);
        if (t < 1 || t > n) {
            throw ParseError(source, header_line + 1,
                             "target " + toks[i] + " at position " + std::to_string(i + 1) +
                                 " is outside 1.." + std::to_string(n));
        }
        if (seen[t - 1]) {
            throw ParseError(source, header_line + 1,
                             "duplicate target " + toks[i] + " breaks injectivity");
        }
        seen[t - 1] = 1;
        targets[i] = t - 1;
    }
    return Injection(n, std::move(targets));
}

void write_injection(const Injection& pi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    write_injection(pi, out);
}

void write_injection(const Injection& pi, std::ostream& out) {
    out << pi.domain_size() << " " << pi.codomain_size() << "\n";
    for (std::size_t i = 0; i < pi.domain_size(); ++i) {
        if (i) out << " ";
        out << (pi.target(i) + 1);
    }
    out << "\n";
}

RealVector read_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    return read_vector(in, path);
}

RealVector read_vector(std::istream& in, const std::string& source) {
    const DenseRealMatrix grid = read_dense_csv(in, source);
    if (grid.rows() != 1 && grid.cols() != 1) {
        throw ParseError(source, 1, "vector file must be a single row or a single column");
    }
    RealVector v;
    v.reserve(grid.rows() * grid.cols());
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            v.push_back(grid(i, j));
        }
    }
    return v;
}

std::string format_vector(const RealVector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

nlohmann::json witness_to_json(const Witness& w) {
    nlohmann::json j{{"clause", w.clause}, {"indices", w.indices}};
    if (w.value) j["value"] = *w.value;
    return j;
}

nlohmann::json report_to_json(const ClassificationReport& report) {
    nlohmann::json witnesses = nlohmann::json::array();
    for (const auto& w : report.witnesses) witnesses.push_back(witness_to_json(w));
    return nlohmann::json{{"shape", {report.rows, report.cols}},
                          {"is_binary", report.is_binary},
                          {"is_row_permutation_like", report.is_row_permutation_like},
                          {"is_column_permutation_like", report.is_column_permutation_like},
                          {"row_sums_all_one", report.row_sums_all_one},
                          {"is_composition_matrix", report.is_composition_matrix},
                          {"witnesses", witnesses}};
}

namespace {

std::string describe(const Witness& w) {
    const auto& ix = w.indices;
    const auto num = [&](std::size_t k) { return std::to_string(ix[k]); };
    if (w.clause == "non-binary-entry" && ix.size() == 2) {
        return "entry (" + num(0) + ", " + num(1) + ") = " + format_double(w.value.value_or(0)) +
               " is neither 0 nor 1";
    }
    if (w.clause == "multiple-ones-in-row" && ix.size() == 3) {
        return "row " + num(0) + " holds ones in columns " + num(1) + " and " + num(2);
    }
    if (w.clause == "repeated-column" && ix.size() == 3) {
        return "column " + num(0) + " holds ones in rows " + num(1) + " and " + num(2);
    }
    if (w.clause == "zero-row" && ix.size() == 1) {
        return "row " + num(0) + " has no one";
    }
    if (w.clause == "row-sum-not-one" && ix.size() == 1) {
        return "row " + num(0) + " sums to " + format_double(w.value.value_or(0));
    }
    if (w.clause == "bad-shape" && ix.size() == 2) {
        return num(0) + " rows exceed " + num(1) + " columns";
    }
    std::string s = "indices (";
    for (std::size_t k = 0; k < ix.size(); ++k) {
        if (k) s += ", ";
        s += num(k);
    }
    s += ")";
    if (w.value) s += " value " + format_double(*w.value);
    return s;
}

}  // namespace

void write_report_text(const ClassificationReport& report, std::ostream& out) {
    const auto yn = [](bool b) { return b ? "yes" : "no"; };
    out << "shape: " << report.rows << " x " << report.cols << "\n";
    out << "binary: " << yn(report.is_binary) << "\n";
    out << "row-permutation-like: " << yn(report.is_row_permutation_like) << "\n";
    out << "column-permutation-like: " << yn(report.is_column_permutation_like) << "\n";
    out << "row-sums-all-one: " << yn(report.row_sums_all_one) << "\n";
    out << "composition-matrix: " << yn(report.is_composition_matrix) << "\n";
    if (!report.witnesses.empty()) {
        out << "witnesses:\n";
        for (const auto& w : report.witnesses) {
            out << "  " << w.clause << ": " << describe(w) << "\n";
        }
    }
}

nlohmann::json counts_to_json(const ClassCounts& counts) {
    return nlohmann::json{{"shape", {counts.m, counts.n}},
                          {"n_row_permutation_like", counts.n_row_permutation_like},
                          {"n_column_permutation_like", counts.n_column_permutation_like},
                          {"n_both", counts.n_both},
                          {"n_composition", counts.n_composition}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace compmat::io
