#include "support.hpp"

#include <cmath>
#include <numbers>

namespace qdt::test {

CVector random_vector(Rng& rng, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(dim);
    for (Complex& c : v)
        c = Complex(gauss(rng), gauss(rng));
    return normalized(v);
}

CVector random_real_vector(Rng& rng, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(dim);
    for (Complex& c : v)
        c = Complex(gauss(rng), 0.0);
    return normalized(v);
}

namespace {

ComplexMatrix gram_schmidt(std::vector<CVector> cols) {
    std::size_t dim = cols.size();
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex overlap = inner(cols[k], cols[j]);
            for (std::size_t i = 0; i < dim; ++i)
                cols[j][i] -= overlap * cols[k][i];
        }
        cols[j] = normalized(cols[j]);
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            m(i, j) = cols[j][i];
    return m;
}

} // namespace

ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
    std::vector<CVector> cols;
    for (std::size_t j = 0; j < dim; ++j)
        cols.push_back(random_vector(rng, dim));
    return gram_schmidt(std::move(cols));
}

ComplexMatrix random_real_orthogonal(Rng& rng, std::size_t dim) {
    std::vector<CVector> cols;
    for (std::size_t j = 0; j < dim; ++j)
        cols.push_back(random_real_vector(rng, dim));
    return gram_schmidt(std::move(cols));
}

namespace {

std::vector<double> simplex_weights(Rng& rng, std::size_t count) {
    std::uniform_real_distribution<double> unit(0.05, 1.0);
    std::vector<double> w(count);
    double sum = 0.0;
    for (double& x : w) {
        x = unit(rng);
        sum += x;
    }
    for (double& x : w)
        x /= sum;
    return w;
}

} // namespace

DensityOperator random_density(Rng& rng, const SpaceLayout& layout) {
    std::size_t dim = layout.total_dim();
    std::vector<CVector> vectors;
    for (std::size_t k = 0; k < dim; ++k)
        vectors.push_back(random_vector(rng, dim));
    return DensityOperator::mixture(vectors, simplex_weights(rng, dim), layout);
}

DensityOperator random_real_density(Rng& rng, const SpaceLayout& layout) {
    std::size_t dim = layout.total_dim();
    std::vector<CVector> vectors;
    for (std::size_t k = 0; k < dim; ++k)
        vectors.push_back(random_real_vector(rng, dim));
    return DensityOperator::mixture(vectors, simplex_weights(rng, dim), layout);
}

std::array<double, 4> spectrum_signature(const ComplexMatrix& rho) {
    std::array<double, 4> sig{};
    ComplexMatrix power = rho;
    sig[0] = power.trace().real();
    for (std::size_t k = 1; k < 4; ++k) {
        power = power * rho;
        sig[k] = power.trace().real();
    }
    return sig;
}

DensityOperator structured_state(Rng& rng, std::size_t n, const SpaceLayout& layout,
                                 std::size_t layers) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<CVector> vectors;
    for (std::size_t l = 0; l < layers; ++l) {
        ComplexMatrix u = random_unitary(rng, n);
        CVector psi(n * n, Complex(0.0, 0.0));
        double scale = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t a = 0; a < n; ++a) {
            Complex phase = std::polar(scale, angle(rng));
            for (std::size_t s = 0; s < n; ++s)
                psi[a * n + s] += phase * u(s, a);
        }
        vectors.push_back(psi);
    }
    return DensityOperator::mixture(vectors, simplex_weights(rng, layers), layout);
}

FeelingAmplitudes shared_row_feelings(Rng& rng, std::size_t alternatives,
                                      std::size_t subject_dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    FeelingAmplitudes feelings;
    feelings.alternatives = alternatives;
    feelings.subject_dim = subject_dim;
    feelings.b.resize(alternatives * subject_dim);
    CVector row(subject_dim);
    for (Complex& c : row)
        c = Complex(gauss(rng), gauss(rng));
    for (std::size_t a = 0; a < alternatives; ++a)
        for (std::size_t s = 0; s < subject_dim; ++s)
            feelings.at(a, s) = row[s];
    return feelings;
}

} // namespace qdt::test
