#include "qdt/prospects.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qdt/errors.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

AlternativeSet::AlternativeSet(std::vector<CVector> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw ModelError("alternative set is empty");
    const std::size_t d = vectors_[0].size();
    if (vectors_.size() > d)
        throw ModelError("more alternatives than the factor dimension allows");
    for (const CVector& v : vectors_)
        if (v.size() != d) throw DimensionError("alternative vectors differ in size");
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        for (std::size_t j = i; j < vectors_.size(); ++j) {
            const Complex s = inner(vectors_[i], vectors_[j]);
            const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(s - expect) > tol::kOrthonormal)
                throw ModelError("alternative vectors are not orthonormal");
        }
    }
}

AlternativeSet AlternativeSet::computational(std::size_t dim) {
    std::vector<CVector> vectors;
    for (std::size_t n = 0; n < dim; ++n) {
        CVector v(dim, Complex{0.0, 0.0});
        v[n] = 1.0;
        vectors.push_back(std::move(v));
    }
    return AlternativeSet(std::move(vectors));
}

const CVector& AlternativeSet::vector(std::size_t n) const {
    if (n >= vectors_.size()) throw ModelError("alternative index out of range");
    return vectors_[n];
}

ComplexMatrix projector(const AlternativeSet& alternatives, std::size_t n) {
    const CVector& v = alternatives.vector(n);
    return ComplexMatrix::outer(v, v);
}

CVector FeelingAmplitudes::row(std::size_t n) const {
    if (n >= alternatives) throw ModelError("alternative index out of range");
    return CVector(b.begin() + n * subject_dim, b.begin() + (n + 1) * subject_dim);
}

FeelingAmplitudes sample_feelings(std::size_t alternatives, std::size_t subject_dim,
                                  std::uint64_t seed, FeelingDistribution distribution) {
    if (alternatives == 0 || subject_dim == 0)
        throw ModelError("feeling amplitudes need at least one alternative and subject state");
    FeelingAmplitudes f;
    f.alternatives = alternatives;
    f.subject_dim = subject_dim;
    f.seed = seed;
    f.b.resize(alternatives * subject_dim);

    std::mt19937_64 rng(seed);
    if (distribution == FeelingDistribution::complex_gaussian) {
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (Complex& z : f.b) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z = Complex{re, im};
        }
    } else {
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        for (Complex& z : f.b) z = std::polar(1.0, phase(rng));
    }
    return f;
}

ProspectOperator prospect_operator(const AlternativeSet& alternatives, std::size_t n,
                                   const FeelingAmplitudes& feelings) {
    if (feelings.alternatives != alternatives.size())
        throw DimensionError("feeling rows do not match the alternative count");
    const CVector z = feelings.row(n);
    ProspectOperator op;
    op.alternative = n;
    op.matrix = tensor_product(projector(alternatives, n), ComplexMatrix::outer(z, z));
    return op;
}

std::vector<ProspectOperator> prospect_family(const AlternativeSet& alternatives,
                                              const FeelingAmplitudes& feelings) {
    std::vector<ProspectOperator> family;
    for (std::size_t n = 0; n < alternatives.size(); ++n)
        family.push_back(prospect_operator(alternatives, n, feelings));
    return family;
}

namespace {

double prospect_weight(const DensityOperator& state,
                       const std::vector<ProspectOperator>& prospects) {
    if (prospects.empty()) throw ModelError("empty prospect family");
    std::set<std::size_t> indices;
    for (const ProspectOperator& p : prospects) {
        if (!indices.insert(p.alternative).second)
            throw ModelError("prospect family repeats an alternative");
        if (p.matrix.rows() != state.dim())
            throw LayoutError("prospect operator does not span the state space");
    }
    double total = 0.0;
    for (const ProspectOperator& p : prospects)
        total += std::real(trace_product(state.matrix(), p.matrix));
    return total;
}

} // namespace

double check_resolution_weak(const DensityOperator& state,
                             const std::vector<ProspectOperator>& prospects) {
    return std::abs(prospect_weight(state, prospects) - 1.0);
}

FeelingAmplitudes normalize_feelings(const DensityOperator& state,
                                     const AlternativeSet& alternatives,
                                     const FeelingAmplitudes& feelings) {
    if (alternatives.size() * feelings.subject_dim != feelings.b.size() ||
        feelings.alternatives != alternatives.size())
        throw DimensionError("feeling rows do not match the alternative count");
    const double total = prospect_weight(state, prospect_family(alternatives, feelings));
    if (!(total > tol::kStrict))
        throw ModelError("total prospect weight vanishes; feelings cannot be normalized");
    const double scale = 1.0 / std::sqrt(total);
    FeelingAmplitudes out = feelings;
    for (Complex& z : out.b) z *= scale;
    out.normalized = true;
    return out;
}

} // namespace qdt
