#pragma once

// CSV file formats read and written by the opscale tool.
//
// Signal file:
//     index,re,im
//     -3.5,0.0010,0
//     ...
// Matrix file (dense, row-major):
//     # opscale-matrix kind=scaling n=8 scheme=centered m=2
//     row_index,col_index,re,im
//     -3.5,-3.5,1,0
//     ...
// Basis file (one column per order p):
//     # opscale-cddhf n=8 m=1 ordering=parity-interleaved near_degenerate=0
//     # eigenvalues,<lambda_0>,...,<lambda_{N-1}>
//     index,H0,...,H{N-1}
//     0,<H_0[0]>,...
//
// Reals are written with 17 significant digits so a read reproduces the
// written double exactly; half-integer indices come out as exact decimals.

#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opscale/linalg.hpp"
#include "opscale/pei.hpp"

namespace opscale::io {

/// Malformed input; carries the 1-based line number where parsing stopped.
class parse_error : public std::invalid_argument {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::optional<double> parse_real(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return value;
}

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// ---------------------------------------------------------------- signals

struct SignalData {
    std::vector<double> indices;
    ComplexVector values;
};

inline void write_signal(std::ostream& out, const std::vector<double>& indices, const ComplexVector& values) {
    if (indices.size() != values.size()) throw dimension_error("write_signal: index/value length mismatch");
    out << "index,re,im\n";
    for (std::size_t k = 0; k < values.size(); ++k)
        out << format_real(indices[k]) << ',' << format_real(values[k].real()) << ','
            << format_real(values[k].imag()) << '\n';
}

inline SignalData read_signal(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw parse_error(1, "empty signal file");
    ++lineno;
    if (strip_cr(line) != "index,re,im") throw parse_error(lineno, "expected header 'index,re,im'");

    SignalData data;
    std::vector<complex> values;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 3) throw parse_error(lineno, "expected 3 fields, found " + std::to_string(fields.size()));
        const auto idx = parse_real(fields[0]);
        const auto re = parse_real(fields[1]);
        const auto im = parse_real(fields[2]);
        if (!idx || !re || !im) throw parse_error(lineno, "non-numeric field");
        data.indices.push_back(*idx);
        values.emplace_back(*re, *im);
    }
    if (values.empty()) throw parse_error(lineno, "signal file has no samples");
    data.values = ComplexVector(std::move(values));
    return data;
}

// ---------------------------------------------------------------- matrices

struct MatrixHeader {
    std::string kind;
    std::size_t n = 0;
    std::string scheme;
    std::optional<double> m_factor;
};

struct MatrixData {
    MatrixHeader header;
    std::vector<double> labels;  // row/column index values, ascending
    ComplexMatrix matrix;
};

inline void write_matrix(std::ostream& out, const MatrixHeader& header, const std::vector<double>& labels,
                         const ComplexMatrix& m) {
    if (!m.square() || m.rows() != labels.size()) throw dimension_error("write_matrix: labels do not match matrix");
    out << "# opscale-matrix kind=" << header.kind << " n=" << header.n << " scheme=" << header.scheme;
    if (header.m_factor) out << " m=" << format_real(*header.m_factor);
    out << '\n' << "row_index,col_index,re,im\n";
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out << format_real(labels[r]) << ',' << format_real(labels[c]) << ',' << format_real(m(r, c).real())
                << ',' << format_real(m(r, c).imag()) << '\n';
}

inline MatrixData read_matrix(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line)) throw parse_error(1, "empty matrix file");
    line = strip_cr(line);
    const std::string_view magic = "# opscale-matrix ";
    if (line.rfind(magic, 0) != 0) throw parse_error(lineno, "missing '# opscale-matrix' header");

    MatrixData data;
    std::map<std::string, std::string> fields;
    for (auto token : split(std::string_view(line).substr(magic.size()), ' ')) {
        if (token.empty()) continue;
        const auto eq = token.find('=');
        if (eq == std::string_view::npos) throw parse_error(lineno, "malformed header field");
        fields[std::string(token.substr(0, eq))] = std::string(token.substr(eq + 1));
    }
    if (!fields.count("kind") || !fields.count("n") || !fields.count("scheme"))
        throw parse_error(lineno, "header must carry kind, n and scheme");
    data.header.kind = fields["kind"];
    data.header.scheme = fields["scheme"];
    const auto n = parse_real(fields["n"]);
    if (!n || *n < 1 || *n != static_cast<double>(static_cast<std::size_t>(*n)))
        throw parse_error(lineno, "invalid n in header");
    data.header.n = static_cast<std::size_t>(*n);
    if (fields.count("m")) {
        data.header.m_factor = parse_real(fields["m"]);
        if (!data.header.m_factor) throw parse_error(lineno, "invalid m in header");
    }

    ++lineno;
    if (!std::getline(in, line) || strip_cr(line) != "row_index,col_index,re,im")
        throw parse_error(lineno, "expected column header 'row_index,col_index,re,im'");

    const std::size_t size = data.header.n;
    data.matrix = ComplexMatrix(size, size);
    std::vector<double> row_labels(size), col_labels(size);
    std::size_t entry = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (entry == size * size) throw parse_error(lineno, "more than N^2 entries");
        const auto f = split(line);
        if (f.size() != 4) throw parse_error(lineno, "expected 4 fields");
        const auto r = parse_real(f[0]), c = parse_real(f[1]), re = parse_real(f[2]), im = parse_real(f[3]);
        if (!r || !c || !re || !im) throw parse_error(lineno, "non-numeric field");
        const std::size_t row = entry / size, col = entry % size;
        if (col == 0)
            row_labels[row] = *r;
        else if (*r != row_labels[row])
            throw parse_error(lineno, "row index changes within a row");
        if (row == 0)
            col_labels[col] = *c;
        else if (*c != col_labels[col])
            throw parse_error(lineno, "column index differs from the first row");
        data.matrix(row, col) = complex(*re, *im);
        ++entry;
    }
    if (entry != size * size)
        throw parse_error(lineno, "expected " + std::to_string(size * size) + " entries, found " + std::to_string(entry));
    if (row_labels != col_labels) throw parse_error(lineno, "row and column index sets differ");
    data.labels = std::move(row_labels);
    return data;
}

// ---------------------------------------------------------------- bases

inline void write_basis(std::ostream& out, const CddhfBasis& basis) {
    const std::size_t n = basis.n_samples;
    out << "# opscale-cddhf n=" << n << " m=" << format_real(basis.m_factor)
        << " ordering=parity-interleaved near_degenerate=" << basis.near_degenerate << '\n';
    out << "# eigenvalues";
    for (double lambda : basis.eigenvalues) out << ',' << format_real(lambda);
    out << "\nindex";
    for (std::size_t p = 0; p < n; ++p) out << ",H" << p;
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        out << i;
        for (std::size_t p = 0; p < n; ++p) out << ',' << format_real(basis.vectors[p][i].real());
        out << '\n';
    }
}

struct BasisData {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> columns;  // columns[p][i]
};

inline BasisData read_basis(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    BasisData data;
    auto next = [&](const char* what) {
        if (!std::getline(in, line)) throw parse_error(lineno + 1, std::string("missing ") + what);
        ++lineno;
        line = strip_cr(line);
    };
    next("header");
    if (line.rfind("# opscale-cddhf", 0) != 0) throw parse_error(lineno, "missing '# opscale-cddhf' header");
    next("eigenvalue line");
    const auto ev = split(line);
    if (ev.empty() || ev[0] != "# eigenvalues") throw parse_error(lineno, "expected '# eigenvalues' line");
    for (std::size_t k = 1; k < ev.size(); ++k) {
        const auto v = parse_real(ev[k]);
        if (!v) throw parse_error(lineno, "non-numeric eigenvalue");
        data.eigenvalues.push_back(*v);
    }
    const std::size_t n = data.eigenvalues.size();
    next("column header");
    if (split(line).size() != n + 1) throw parse_error(lineno, "column header does not match eigenvalue count");
    data.columns.assign(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        next("data row");
        const auto f = split(line);
        if (f.size() != n + 1) throw parse_error(lineno, "expected " + std::to_string(n + 1) + " fields");
        for (std::size_t p = 0; p < n; ++p) {
            const auto v = parse_real(f[p + 1]);
            if (!v) throw parse_error(lineno, "non-numeric field");
            data.columns[p][i] = *v;
        }
    }
    return data;
}

}  // namespace opscale::io
