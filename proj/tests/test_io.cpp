#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "opscale/io.hpp"
#include "opscale/operators.hpp"
#include "opscale/scaling.hpp"
#include "oracles.hpp"

using namespace opscale;

namespace {

std::size_t parse_error_line(const std::string& text, bool matrix) {
    std::istringstream in(text);
    try {
        if (matrix)
            io::read_matrix(in);
        else
            io::read_signal(in);
    } catch (const io::parse_error& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(FormatReal, RoundTripsExactly) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const double x = dist(rng) * std::pow(10.0, i % 40 - 20);
        EXPECT_EQ(*io::parse_real(io::format_real(x)), x);
    }
    EXPECT_EQ(io::format_real(-0.5), "-0.5");
    EXPECT_EQ(io::format_real(7.5), "7.5");
    EXPECT_EQ(io::format_real(0.1), "0.10000000000000001");
}

TEST(ParseReal, Rejects) {
    EXPECT_FALSE(io::parse_real(""));
    EXPECT_FALSE(io::parse_real("abc"));
    EXPECT_FALSE(io::parse_real("1.5x"));
    EXPECT_EQ(io::parse_real(" +2 "), 2.0);
}

TEST(SignalFile, RoundTrip) {
    std::mt19937_64 rng(52);
    const auto grid = index_grid(9, IndexScheme::Centered);
    const auto x = oracle::random_vector(rng, 9);
    std::ostringstream out;
    io::write_signal(out, grid.indices, x);
    std::istringstream in(out.str());
    const auto data = io::read_signal(in);
    EXPECT_EQ(data.indices, grid.indices);
    EXPECT_EQ(data.values, x);
}

TEST(SignalFile, AcceptsCrlf) {
    std::istringstream in("index,re,im\r\n0,1,2\r\n");
    const auto data = io::read_signal(in);
    ASSERT_EQ(data.values.size(), 1u);
    EXPECT_EQ(data.values[0], complex(1, 2));
}

TEST(SignalFile, ErrorsCarryLineNumbers) {
    EXPECT_EQ(parse_error_line("", false), 1u);
    EXPECT_EQ(parse_error_line("idx,re,im\n0,1,0\n", false), 1u);
    EXPECT_EQ(parse_error_line("index,re,im\n0,1,0\n1,2\n", false), 3u);
    EXPECT_EQ(parse_error_line("index,re,im\n0,1,0\n1,x,0\n", false), 3u);
    EXPECT_EQ(parse_error_line("index,re,im\n", false), 1u);
}

TEST(MatrixFile, RoundTripIsBitExact) {
    const auto ops = make_operator_set(6, IndexScheme::Centered);
    const auto m = scaling_matrix(ScalingSpec{2.0, 6, IndexScheme::Centered}, ops);
    std::ostringstream out;
    io::write_matrix(out, {"scaling", 6, "centered", 2.0}, ops.grid.indices, m);
    std::istringstream in(out.str());
    const auto data = io::read_matrix(in);
    EXPECT_EQ(data.header.kind, "scaling");
    EXPECT_EQ(data.header.n, 6u);
    EXPECT_EQ(data.header.scheme, "centered");
    EXPECT_EQ(data.header.m_factor, 2.0);
    EXPECT_EQ(data.labels, ops.grid.indices);
    EXPECT_EQ(data.matrix, m);
}

TEST(MatrixFile, HeaderLayout) {
    std::ostringstream out;
    io::write_matrix(out, {"u", 2, "ordinary", std::nullopt}, {-1.0, 0.0}, ComplexMatrix::identity(2));
    EXPECT_EQ(out.str(),
              "# opscale-matrix kind=u n=2 scheme=ordinary\nrow_index,col_index,re,im\n"
              "-1,-1,1,0\n-1,0,0,0\n0,-1,0,0\n0,0,1,0\n");
    EXPECT_THROW(io::write_matrix(out, {"u", 3, "ordinary", std::nullopt}, {0.0}, ComplexMatrix::identity(2)),
                 dimension_error);
}

TEST(MatrixFile, ErrorsCarryLineNumbers) {
    const std::string head = "# opscale-matrix kind=u n=2 scheme=ordinary\nrow_index,col_index,re,im\n";
    EXPECT_EQ(parse_error_line("kind=u\n", true), 1u);
    EXPECT_EQ(parse_error_line("# opscale-matrix kind=u scheme=ordinary\n", true), 1u);
    EXPECT_EQ(parse_error_line("# opscale-matrix kind=u n=2 scheme=ordinary\nrow,col\n", true), 2u);
    EXPECT_EQ(parse_error_line(head + "-1,-1,1,0\n-1,0,0,0\n0,-1,0\n", true), 5u);
    EXPECT_EQ(parse_error_line(head + "-1,-1,1,0\n-1,0,0,0\n0,-1,0,0\n", true), 5u);
    EXPECT_EQ(parse_error_line(head + "-1,-1,1,0\n-1,0,0,0\n0,5,0,0\n0,0,1,0\n", true), 5u);
    EXPECT_EQ(parse_error_line(head + "-1,-1,1,0\n-1,0,0,0\n0,-1,0,0\n0,0,1,0\n0,0,1,0\n", true), 7u);
}

TEST(BasisFile, RoundTrip) {
    const auto basis = cddhf_basis(5, 2.0);
    std::ostringstream out;
    io::write_basis(out, basis);
    std::istringstream in(out.str());
    const auto data = io::read_basis(in);
    EXPECT_EQ(data.eigenvalues, basis.eigenvalues);
    for (std::size_t p = 0; p < 5; ++p)
        for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(data.columns[p][i], basis.vectors[p][i].real());
}

TEST(BasisFile, Errors) {
    std::istringstream bad("# something else\n");
    EXPECT_THROW(io::read_basis(bad), io::parse_error);
    std::istringstream truncated("# opscale-cddhf n=2 m=1\n# eigenvalues,1,2\nindex,H0,H1\n0,1,0\n");
    EXPECT_THROW(io::read_basis(truncated), io::parse_error);
}
