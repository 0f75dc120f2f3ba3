#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qdt/errors.hpp"
#include "qdt/tensor.hpp"
#include "support.hpp"

using namespace qdt;

namespace {

double matrix_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    return (a - b).max_abs();
}

ComplexMatrix random_hermitian(test::Rng& rng, std::size_t dim) {
    ComplexMatrix m(dim, dim);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = {gauss(rng), gauss(rng)};
    ComplexMatrix h = (m + m.adjoint()) * Complex(0.5, 0.0);
    return h;
}

} // namespace

TEST_CASE("tensor product identity and diagonal cases") {
    ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(matrix_diff(tensor_product(i2, i2), ComplexMatrix::identity(4)) == 0.0);

    ComplexMatrix d12 = ComplexMatrix::diagonal({1.0, 2.0});
    ComplexMatrix d34 = ComplexMatrix::diagonal({3.0, 4.0});
    ComplexMatrix expect = ComplexMatrix::diagonal({3.0, 4.0, 6.0, 8.0});
    CHECK(matrix_diff(tensor_product(d12, d34), expect) <= 1e-15);
}

TEST_CASE("tensor product of basis projectors places a single entry") {
    ComplexMatrix p0 = ComplexMatrix::outer({1.0, 0.0}, {1.0, 0.0});
    ComplexMatrix p1 = ComplexMatrix::outer({0.0, 1.0}, {0.0, 1.0});
    ComplexMatrix t = tensor_product(p0, p1);
    REQUIRE(t.rows() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Complex want = (i == 1 && j == 1) ? Complex(1.0) : Complex(0.0);
            CHECK(std::abs(t(i, j) - want) == 0.0);
        }
}

TEST_CASE("tensor product matches the index formula on random input") {
    test::Rng rng(71);
    ComplexMatrix a = random_hermitian(rng, 3);
    ComplexMatrix b = random_hermitian(rng, 2);
    ComplexMatrix t = tensor_product(a, b);
    REQUIRE(t.rows() == 6);
    REQUIRE(t.cols() == 6);
    for (std::size_t i1 = 0; i1 < 3; ++i1)
        for (std::size_t i2 = 0; i2 < 2; ++i2)
            for (std::size_t j1 = 0; j1 < 3; ++j1)
                for (std::size_t j2 = 0; j2 < 2; ++j2) {
                    Complex want = a(i1, j1) * b(i2, j2);
                    CHECK(std::abs(t(i1 * 2 + i2, j1 * 2 + j2) - want) <= 1e-15);
                }
}

TEST_CASE("tensor product is associative") {
    test::Rng rng(72);
    ComplexMatrix a = random_hermitian(rng, 2);
    ComplexMatrix b = random_hermitian(rng, 3);
    ComplexMatrix c = random_hermitian(rng, 2);
    ComplexMatrix left = tensor_product(tensor_product(a, b), c);
    ComplexMatrix right = tensor_product(a, tensor_product(b, c));
    CHECK(matrix_diff(left, right) <= 1e-14);
}

TEST_CASE("layout mixed-radix indexing runs leftmost factor slowest") {
    SpaceLayout layout({{"A", 2}, {"B", 3}, {"S", 2}});
    CHECK(layout.total_dim() == 12);
    CHECK(layout.compose({1, 2, 1}) == 1 * 6 + 2 * 2 + 1);
    auto digits = layout.decompose(11);
    REQUIRE(digits.size() == 3);
    CHECK(digits[0] == 1);
    CHECK(digits[1] == 2);
    CHECK(digits[2] == 1);
    for (std::size_t u = 0; u < 12; ++u) CHECK(layout.compose(layout.decompose(u)) == u);

    CHECK(layout.position("B") == 1);
    CHECK(layout.dim_of("S") == 2);
    CHECK(layout.has_label("A"));
    CHECK_FALSE(layout.has_label("Z"));
}

TEST_CASE("layouts reject duplicate labels and zero dimensions") {
    CHECK_THROWS_AS(SpaceLayout({{"A", 2}, {"A", 2}}), LayoutError);
    CHECK_THROWS_AS(SpaceLayout({{"A", 0}}), LayoutError);
}

TEST_CASE("partial trace of a product state recovers the kept factor") {
    test::Rng rng(73);
    SpaceLayout la = single_factor("A", 3);
    SpaceLayout ls = single_factor("S", 2);
    ComplexMatrix rho_a = test::random_density(rng, la).matrix();
    ComplexMatrix rho_s = test::random_density(rng, ls).matrix();
    SpaceLayout joint({{"A", 3}, {"S", 2}});
    ComplexMatrix product = tensor_product(rho_a, rho_s);
    CHECK(matrix_diff(partial_trace(product, joint, {"A"}), rho_a) <= 1e-12);
    CHECK(matrix_diff(partial_trace(product, joint, {"S"}), rho_s) <= 1e-12);
}

TEST_CASE("partial trace of the Bell projector is maximally mixed") {
    const double r = 1.0 / std::sqrt(2.0);
    CVector bell = {r, 0.0, 0.0, r};
    ComplexMatrix proj = ComplexMatrix::outer(bell, bell);
    SpaceLayout layout({{"A", 2}, {"B", 2}});
    ComplexMatrix reduced = partial_trace(proj, layout, {"A"});
    ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5, 0.0);
    CHECK(matrix_diff(reduced, half) <= 1e-15);
}

TEST_CASE("tracing out a one-dimensional factor changes nothing") {
    test::Rng rng(74);
    SpaceLayout layout({{"A", 3}, {"S", 1}});
    ComplexMatrix rho = test::random_density(rng, layout).matrix();
    CHECK(matrix_diff(partial_trace(rho, layout, {"A"}), rho) <= 1e-15);
}

TEST_CASE("partial trace matches a direct index-sum oracle") {
    test::Rng rng(75);
    SpaceLayout layout({{"A", 2}, {"B", 2}, {"S", 3}});
    ComplexMatrix rho = test::random_density(rng, layout).matrix();

    // Keep (A, B): sum over the S digit with the other digits fixed.
    ComplexMatrix oracle(4, 4);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t ap = 0; ap < 2; ++ap)
                for (std::size_t bp = 0; bp < 2; ++bp) {
                    Complex sum = 0.0;
                    for (std::size_t s = 0; s < 3; ++s)
                        sum += rho(layout.compose({a, b, s}), layout.compose({ap, bp, s}));
                    oracle(a * 2 + b, ap * 2 + bp) = sum;
                }
    CHECK(matrix_diff(partial_trace(rho, layout, {"A", "B"}), oracle) <= 1e-14);

    // Keeping a non-adjacent pair works the same way.
    ComplexMatrix oracle_as(6, 6);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t s = 0; s < 3; ++s)
            for (std::size_t ap = 0; ap < 2; ++ap)
                for (std::size_t sp = 0; sp < 3; ++sp) {
                    Complex sum = 0.0;
                    for (std::size_t b = 0; b < 2; ++b)
                        sum += rho(layout.compose({a, b, s}), layout.compose({ap, b, sp}));
                    oracle_as(a * 3 + s, ap * 3 + sp) = sum;
                }
    CHECK(matrix_diff(partial_trace(rho, layout, {"A", "S"}), oracle_as) <= 1e-14);
}

TEST_CASE("partial trace preserves the trace") {
    test::Rng rng(76);
    SpaceLayout layout({{"A", 2}, {"B", 3}, {"S", 2}});
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix rho = test::random_density(rng, layout).matrix();
        for (const auto& keep :
             std::vector<std::vector<std::string>>{{"A"}, {"B"}, {"S"}, {"A", "S"}, {"B", "S"}}) {
            CHECK(std::abs(partial_trace(rho, layout, keep).trace() - rho.trace()) <= 1e-12);
        }
    }
}

TEST_CASE("partial trace rejects bad keep sets and wrong dimensions") {
    SpaceLayout layout({{"A", 2}, {"S", 2}});
    ComplexMatrix rho = ComplexMatrix::identity(4) * Complex(0.25, 0.0);
    CHECK_THROWS_AS(partial_trace(rho, layout, {}), LayoutError);
    CHECK_THROWS_AS(partial_trace(rho, layout, {"A", "S"}), LayoutError);
    CHECK_THROWS_AS(partial_trace(rho, layout, {"Q"}), LayoutError);
    ComplexMatrix wrong = ComplexMatrix::identity(3);
    CHECK_THROWS_AS(partial_trace(wrong, layout, {"A"}), LayoutError);
}

TEST_CASE("trace_product basics") {
    ComplexMatrix half = ComplexMatrix::identity(2) * Complex(0.5, 0.0);
    CHECK(std::abs(trace_product(half, ComplexMatrix::identity(2)) - Complex(1.0)) <= 1e-15);

    ComplexMatrix p0 = ComplexMatrix::outer({1.0, 0.0}, {1.0, 0.0});
    ComplexMatrix p1 = ComplexMatrix::outer({0.0, 1.0}, {0.0, 1.0});
    CHECK(std::abs(trace_product(p0, p1)) == 0.0);

    CHECK_THROWS_AS(trace_product(p0, ComplexMatrix::identity(3)), DimensionError);
}

TEST_CASE("trace_product equals the double-loop sum and is real on hermitian pairs") {
    test::Rng rng(77);
    ComplexMatrix rho = random_hermitian(rng, 3);
    ComplexMatrix op = random_hermitian(rng, 3);
    Complex oracle = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) oracle += rho(i, j) * op(j, i);
    Complex got = trace_product(rho, op);
    CHECK(std::abs(got - oracle) <= 1e-12);
    CHECK(std::abs(got.imag()) <= 1e-12);
}

TEST_CASE("embed lifts factor operators and matches explicit kron") {
    test::Rng rng(78);
    SpaceLayout layout({{"A", 2}, {"B", 3}, {"S", 2}});
    ComplexMatrix op_a = random_hermitian(rng, 2);
    ComplexMatrix op_b = random_hermitian(rng, 3);

    ComplexMatrix direct =
        tensor_product(tensor_product(op_a, ComplexMatrix::identity(3)), ComplexMatrix::identity(2));
    CHECK(matrix_diff(embed(op_a, layout, {"A"}), direct) <= 1e-14);

    ComplexMatrix middle =
        tensor_product(tensor_product(ComplexMatrix::identity(2), op_b), ComplexMatrix::identity(2));
    CHECK(matrix_diff(embed(op_b, layout, {"B"}), middle) <= 1e-14);

    // Joint operator on the non-adjacent pair (A, S).
    ComplexMatrix op_as = random_hermitian(rng, 4);
    ComplexMatrix lifted = embed(op_as, layout, {"A", "S"});
    SpaceLayout as_layout({{"A", 2}, {"S", 2}});
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t s = 0; s < 2; ++s)
                for (std::size_t ap = 0; ap < 2; ++ap)
                    for (std::size_t bp = 0; bp < 2; ++bp)
                        for (std::size_t sp = 0; sp < 2; ++sp) {
                            Complex want = (b == bp)
                                               ? op_as(as_layout.compose({a, s}),
                                                       as_layout.compose({ap, sp}))
                                               : Complex(0.0);
                            CHECK(std::abs(lifted(layout.compose({a, b, s}),
                                                  layout.compose({ap, bp, sp})) -
                                           want) <= 1e-15);
                        }
}

TEST_CASE("vector helpers") {
    CVector u = {Complex(0.0, 1.0), 1.0};
    CVector v = {1.0, Complex(0.0, 1.0)};
    // <u|v> conjugates the first argument: conj(i)*1 + conj(1)*i = 0.
    CHECK(std::abs(inner(u, v)) <= 1e-15);
    CHECK(std::abs(inner(u, u) - Complex(2.0)) <= 1e-15);
    CHECK(norm(u) == doctest::Approx(std::sqrt(2.0)));
    CVector n = normalized(u);
    CHECK(norm(n) == doctest::Approx(1.0));
    CHECK_THROWS_AS(normalized(CVector{0.0, 0.0}), ModelError);
}

TEST_CASE("positive semidefinite screening") {
    CHECK(positive_semidefinite(ComplexMatrix::identity(3), 1e-10));
    ComplexMatrix neg = ComplexMatrix::diagonal({1.0, -0.5});
    CHECK_FALSE(positive_semidefinite(neg, 1e-10));
    // A tiny negative eigenvalue within the floor passes.
    ComplexMatrix brim = ComplexMatrix::diagonal({1.0, -0.5e-10});
    CHECK(positive_semidefinite(brim, 1e-10));
}

TEST_CASE("hermiticity check uses the stated tolerance") {
    ComplexMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(0, 1) = Complex(0.3, 0.2);
    m(1, 0) = Complex(0.3, -0.2);
    CHECK(m.is_hermitian(1e-12));
    m(1, 0) = Complex(0.3, -0.2 + 1e-6);
    CHECK_FALSE(m.is_hermitian(1e-12));
    CHECK(m.is_hermitian(1e-5));
}
