#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "qdt/errors.hpp"
#include "qdt/prospects.hpp"
#include "qdt/tensor.hpp"
#include "support.hpp"

using namespace qdt;

namespace {

double matrix_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

double row_weight(const FeelingAmplitudes& feelings, std::size_t n) {
    double w = 0.0;
    for (std::size_t alpha = 0; alpha < feelings.subject_dim; ++alpha)
        w += std::norm(feelings.at(n, alpha));
    return w;
}

} // namespace

TEST_CASE("alternative sets enforce orthonormality") {
    AlternativeSet basis = AlternativeSet::computational(3);
    CHECK(basis.size() == 3);
    CHECK(basis.complete());

    const double r = 1.0 / std::sqrt(2.0);
    AlternativeSet pair({CVector{r, r}, CVector{r, -r}});
    CHECK(pair.size() == 2);

    CHECK_THROWS_AS(AlternativeSet({CVector{1.0, 0.0}, CVector{1.0, 0.0}}), ModelError);
    CHECK_THROWS_AS(AlternativeSet({CVector{0.6, 0.8}, CVector{0.0, 1.0}}), ModelError);
    CHECK_THROWS_AS(AlternativeSet({CVector{1.0, 0.0}, CVector{0.0, 0.5}}), ModelError);

    // An incomplete family is legal: two alternatives inside a 3-space.
    AlternativeSet partial({CVector{1.0, 0.0, 0.0}, CVector{0.0, 1.0, 0.0}});
    CHECK_FALSE(partial.complete());
}

TEST_CASE("projector examples") {
    AlternativeSet basis = AlternativeSet::computational(2);
    CHECK(matrix_diff(projector(basis, 0), ComplexMatrix::diagonal({1.0, 0.0})) <= 1e-15);

    const double r = 1.0 / std::sqrt(2.0);
    AlternativeSet plus({CVector{r, r}});
    ComplexMatrix p = projector(plus, 0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(std::abs(p(i, j) - Complex(0.5, 0.0)) <= 1e-14);

    CHECK(matrix_diff(p * p, p) <= 1e-14);
    CHECK(p.is_hermitian(1e-14));
    CHECK_THROWS_AS(projector(basis, 2), ModelError);
}

TEST_CASE("feeling samples are deterministic per seed") {
    FeelingAmplitudes a = sample_feelings(3, 2, 42);
    FeelingAmplitudes b = sample_feelings(3, 2, 42);
    FeelingAmplitudes c = sample_feelings(3, 2, 43);
    REQUIRE(a.b.size() == 6);
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < a.b.size(); ++i) {
        identical = identical && a.b[i] == b.b[i];
        differs = differs || a.b[i] != c.b[i];
    }
    CHECK(identical);
    CHECK(differs);
    CHECK(a.seed == 42);
    CHECK_FALSE(a.normalized);
}

TEST_CASE("feeling sample moments match the declared distributions") {
    const std::size_t draws = 100000;
    FeelingAmplitudes g = sample_feelings(1, draws, 7, FeelingDistribution::complex_gaussian);
    double mean_re = 0.0, mean_im = 0.0, mean_sq = 0.0;
    for (const Complex& z : g.b) {
        mean_re += z.real();
        mean_im += z.imag();
        mean_sq += std::norm(z);
    }
    mean_re /= draws;
    mean_im /= draws;
    mean_sq /= draws;
    // re, im ~ N(0, 1): mean has sigma 1/sqrt(n); |z|^2 has mean 2, sigma 2/sqrt(n).
    const double sigma_mean = 1.0 / std::sqrt(double(draws));
    CHECK(std::abs(mean_re) <= 3.0 * sigma_mean);
    CHECK(std::abs(mean_im) <= 3.0 * sigma_mean);
    CHECK(std::abs(mean_sq - 2.0) <= 3.0 * 2.0 / std::sqrt(double(draws)));

    FeelingAmplitudes u = sample_feelings(1, draws, 7, FeelingDistribution::uniform_modulus);
    double max_modulus_err = 0.0, mean_u_re = 0.0;
    for (const Complex& z : u.b) {
        max_modulus_err = std::max(max_modulus_err, std::abs(std::abs(z) - 1.0));
        mean_u_re += z.real();
    }
    CHECK(max_modulus_err <= 1e-12);
    // Uniform phase: each component has sigma 1/sqrt(2).
    CHECK(std::abs(mean_u_re / draws) <= 3.0 / std::sqrt(2.0 * draws));
}

TEST_CASE("prospect operators have the product form") {
    AlternativeSet basis = AlternativeSet::computational(2);

    FeelingAmplitudes single{2, 3, {1.0, 0.0, 0.0, 0.0, 1.0, 0.0}, 0, false};
    ProspectOperator p0 = prospect_operator(basis, 0, single);
    ComplexMatrix alpha0 = ComplexMatrix::outer({1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    CHECK(matrix_diff(p0.matrix, tensor_product(projector(basis, 0), alpha0)) <= 1e-14);

    FeelingAmplitudes feelings = sample_feelings(2, 3, 77);
    ProspectOperator a = prospect_operator(basis, 0, feelings);
    ProspectOperator b = prospect_operator(basis, 1, feelings);

    // Non-idempotent product rule: P^2 = <z|z> P, cross products vanish.
    double w0 = row_weight(feelings, 0);
    CHECK(matrix_diff(a.matrix * a.matrix, a.matrix * Complex(w0, 0.0)) <= 1e-10);
    CHECK((a.matrix * b.matrix).max_abs() <= 1e-12);

    CHECK(a.matrix.is_hermitian(1e-12));
    CHECK(positive_semidefinite(a.matrix, 1e-10));
}

TEST_CASE("weak resolution residuals") {
    test::Rng rng(22);
    SpaceLayout layout({{"A", 2}, {"S", 1}});
    AlternativeSet basis = AlternativeSet::computational(2);
    DensityOperator rho = test::random_density(rng, layout);

    // Unit feelings with a trivial subject factor resolve identity
    // whenever the alternatives form a basis.
    FeelingAmplitudes unit{2, 1, {1.0, 1.0}, 0, false};
    auto family = prospect_family(basis, unit);
    CHECK(check_resolution_weak(rho, family) <= 1e-12);

    // Doubling every amplitude scales the trace sum by four.
    FeelingAmplitudes doubled = unit;
    for (auto& z : doubled.b) z *= 2.0;
    double residual = check_resolution_weak(rho, prospect_family(basis, doubled));
    CHECK(std::abs(residual - 3.0) <= 1e-10);
}

TEST_CASE("normalize_feelings enforces the resolution for the given state") {
    test::Rng rng(23);
    SpaceLayout layout({{"A", 3}, {"S", 2}});
    AlternativeSet basis = AlternativeSet::computational(3);
    DensityOperator rho = test::random_density(rng, layout);

    FeelingAmplitudes raw = sample_feelings(3, 2, 99);
    FeelingAmplitudes normalized = normalize_feelings(rho, basis, raw);
    CHECK(normalized.normalized);
    CHECK(check_resolution_weak(rho, prospect_family(basis, normalized)) <= 1e-12);

    // A fixed point: normalizing again changes nothing.
    FeelingAmplitudes again = normalize_feelings(rho, basis, normalized);
    for (std::size_t i = 0; i < again.b.size(); ++i)
        CHECK(std::abs(again.b[i] - normalized.b[i]) <= 1e-12);

    // Global scaling washes out: b and 3b normalize to the same table.
    FeelingAmplitudes scaled = raw;
    for (auto& z : scaled.b) z *= 3.0;
    FeelingAmplitudes rescaled = normalize_feelings(rho, basis, scaled);
    for (std::size_t i = 0; i < rescaled.b.size(); ++i)
        CHECK(std::abs(rescaled.b[i] - normalized.b[i]) <= 1e-12);

    FeelingAmplitudes zero{3, 2, std::vector<Complex>(6, 0.0), 0, false};
    CHECK_THROWS_AS(normalize_feelings(rho, basis, zero), ModelError);
}

TEST_CASE("normalized prospect probabilities form a distribution") {
    test::Rng rng(24);
    SpaceLayout layout({{"A", 3}, {"S", 2}});
    AlternativeSet basis = AlternativeSet::computational(3);
    for (int trial = 0; trial < 25; ++trial) {
        DensityOperator rho = test::random_density(rng, layout);
        FeelingAmplitudes feelings =
            normalize_feelings(rho, basis, sample_feelings(3, 2, 1000 + trial));
        auto family = prospect_family(basis, feelings);
        double total = 0.0;
        for (const auto& prospect : family) {
            Complex p = trace_product(rho.matrix(), prospect.matrix);
            CHECK(std::abs(p.imag()) <= 1e-12);
            CHECK(p.real() >= -1e-10);
            total += p.real();
        }
        CHECK(std::abs(total - 1.0) <= 1e-10);
    }
}

TEST_CASE("trivial subject space leaves only projector probabilities") {
    test::Rng rng(25);
    SpaceLayout layout({{"A", 2}, {"S", 1}});
    AlternativeSet basis = AlternativeSet::computational(2);
    DensityOperator rho = test::random_density(rng, layout);
    FeelingAmplitudes feelings = normalize_feelings(rho, basis, sample_feelings(2, 1, 5));
    auto family = prospect_family(basis, feelings);
    DensityOperator rho_a = reduce(rho, {"A"});
    for (std::size_t n = 0; n < 2; ++n) {
        double bare = trace_product(rho_a.matrix(), projector(basis, n)).real();
        double full = trace_product(rho.matrix(), family[n].matrix).real();
        // One global scalar rescales both rows; the ratio to the bare
        // projector probability is the same for every alternative.
        CHECK(std::abs(full - bare * row_weight(feelings, n)) <= 1e-12);
    }
}
