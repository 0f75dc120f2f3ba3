#include "qdt/quantum_state.hpp"

#include <cmath>

#include "qdt/errors.hpp"
#include "qdt/quadrature.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

void DecisionWindow::validate() const {
    if (!(duration > 0.0) || !std::isfinite(start) || !std::isfinite(duration))
        throw ModelError("decision window needs a finite positive duration");
}

EigenProfile EigenProfile::from_function(std::function<double(double)> f) {
    EigenProfile p;
    p.constant = false;
    p.fn = std::move(f);
    return p;
}

double EigenProfile::operator()(double t) const {
    if (constant) return value;
    const double h = fn(t);
    if (!std::isfinite(h)) throw DivergenceError("non-finite eigenvalue profile");
    return h;
}

double EigenProfile::integral(double t0, double t1) const {
    if (constant) return value * (t1 - t0);
    return integrate([this](double t) { return (*this)(t); }, t0, t1, tol::kPhaseQuad);
}

namespace {

void require_orthonormal(const ComplexMatrix& basis, const std::string& label) {
    if (!basis.square()) throw ModelError("basis for factor '" + label + "' is not square");
    const std::size_t n = basis.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t k = 0; k < n; ++k) s += std::conj(basis(k, i)) * basis(k, j);
            const Complex expect = (i == j) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (std::abs(s - expect) > tol::kOrthonormal)
                throw ModelError("basis for factor '" + label + "' is not orthonormal");
        }
    }
}

} // namespace

EvolutionGenerator::EvolutionGenerator(SpaceLayout layout,
                                       std::map<std::string, ComplexMatrix> bases,
                                       std::vector<double> eps, double rate, EigenProfile profile)
    : layout_(std::move(layout)), eps_(std::move(eps)), rate_(rate), profile_(std::move(profile)) {
    if (eps_.size() != layout_.total_dim())
        throw DimensionError("eigenvalue table does not match layout dimension");
    if (!(rate_ >= 0.0) || !std::isfinite(rate_))
        throw ModelError("rate parameter must be finite and nonnegative");
    for (double e : eps_)
        if (!std::isfinite(e)) throw ModelError("non-finite eigenvalue coefficient");

    for (const auto& [label, basis] : bases) {
        if (!layout_.has_label(label)) throw LayoutError("no factor labeled '" + label + "'");
        if (basis.rows() != layout_.dim_of(label))
            throw DimensionError("basis size does not match factor '" + label + "'");
        require_orthonormal(basis, label);
    }
    for (const auto& factor : layout_.factors()) {
        auto it = bases.find(factor.label);
        factor_bases_.push_back(it != bases.end() ? it->second
                                                  : ComplexMatrix::identity(factor.dim));
    }
    basis_ = factor_bases_[0];
    for (std::size_t i = 1; i < factor_bases_.size(); ++i)
        basis_ = tensor_product(basis_, factor_bases_[i]);
}

EvolutionGenerator EvolutionGenerator::diagonal(SpaceLayout layout, std::vector<double> eps,
                                                double rate, EigenProfile profile) {
    return EvolutionGenerator(std::move(layout), {}, std::move(eps), rate, std::move(profile));
}

EvolutionGenerator EvolutionGenerator::acting_on(const SpaceLayout& layout,
                                                 const std::vector<std::string>& active,
                                                 const std::vector<double>& active_eps,
                                                 std::map<std::string, ComplexMatrix> bases,
                                                 double rate, EigenProfile profile) {
    std::vector<std::size_t> positions;
    for (const std::string& label : active) positions.push_back(layout.position(label));
    std::size_t active_dim = 1;
    for (std::size_t p : positions) active_dim *= layout.factor(p).dim;
    if (active_eps.size() != active_dim)
        throw DimensionError("active eigenvalue table does not match active factors");

    std::vector<double> eps(layout.total_dim());
    for (std::size_t u = 0; u < layout.total_dim(); ++u) {
        const auto digits = layout.decompose(u);
        std::size_t sub = 0;
        for (std::size_t p : positions) sub = sub * layout.factor(p).dim + digits[p];
        eps[u] = active_eps[sub];
    }
    return EvolutionGenerator(layout, std::move(bases), std::move(eps), rate, std::move(profile));
}

const ComplexMatrix& EvolutionGenerator::factor_basis(const std::string& label) const {
    return factor_bases_[layout_.position(label)];
}

double EvolutionGenerator::eigenvalue(std::size_t u, double t) const {
    return rate_ * eps_[u] * profile_(t);
}

Complex EvolutionGenerator::phase(std::size_t u, double t0, double t1) const {
    const double theta = rate_ * eps_[u] * profile_.integral(t0, t1);
    if (!std::isfinite(theta)) throw DivergenceError("non-finite phase integral");
    return std::polar(1.0, -theta);
}

EvolutionGenerator EvolutionGenerator::with_rate(double rate) const {
    EvolutionGenerator g(*this);
    if (!(rate >= 0.0) || !std::isfinite(rate))
        throw ModelError("rate parameter must be finite and nonnegative");
    g.rate_ = rate;
    return g;
}

ComplexMatrix EvolutionGenerator::hamiltonian(double t) const {
    CVector d(eps_.size());
    for (std::size_t u = 0; u < eps_.size(); ++u) d[u] = eigenvalue(u, t);
    return basis_ * ComplexMatrix::diagonal(d) * basis_.adjoint();
}

bool EvolutionGenerator::rate_limits_ok() const {
    const double h0 = profile_(0.0);
    if (h0 == 0.0) return true;
    for (double e : eps_) {
        if (e == 0.0) continue;
        if (std::abs(1e-6 * e * h0) > 1e-3) return false;
        if (std::abs(1e6 * e * h0) < 1e3) return false;
    }
    return true;
}

namespace {

void validate_density(const ComplexMatrix& m, const SpaceLayout& layout) {
    if (!m.square() || m.rows() != layout.total_dim())
        throw LayoutError("state size does not match layout");
    if (!m.is_hermitian(tol::kStrict)) throw ModelError("state is not hermitian");
    if (std::abs(m.trace() - Complex{1.0, 0.0}) > tol::kStrict)
        throw ModelError("state trace differs from one");
    if (!positive_semidefinite(m, tol::kPsdFloor))
        throw ModelError("state has an eigenvalue below the positivity floor");
}

} // namespace

DensityOperator DensityOperator::pure(const CVector& v, SpaceLayout layout) {
    if (v.size() != layout.total_dim())
        throw LayoutError("vector size does not match layout");
    const CVector u = normalized(v);
    return DensityOperator(ComplexMatrix::outer(u, u), std::move(layout));
}

DensityOperator DensityOperator::mixture(const std::vector<CVector>& vectors,
                                         const std::vector<double>& weights, SpaceLayout layout) {
    if (vectors.empty() || vectors.size() != weights.size())
        throw ModelError("mixture needs matching nonempty vector and weight lists");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw ModelError("mixture weights must be nonnegative");
        total += w;
    }
    if (!(total > 0.0)) throw ModelError("mixture weights sum to zero");

    ComplexMatrix m(layout.total_dim(), layout.total_dim());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != layout.total_dim())
            throw LayoutError("vector size does not match layout");
        const CVector u = normalized(vectors[i]);
        m = m + ComplexMatrix::outer(u, u) * Complex{weights[i] / total, 0.0};
    }
    return DensityOperator(std::move(m), std::move(layout));
}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, SpaceLayout layout) {
    validate_density(m, layout);
    return DensityOperator(std::move(m), std::move(layout));
}

DensityOperator make_density(const CVector& pure_vector, SpaceLayout layout) {
    return DensityOperator::pure(pure_vector, std::move(layout));
}

DensityOperator make_density(const std::vector<CVector>& vectors,
                             const std::vector<double>& weights, SpaceLayout layout) {
    return DensityOperator::mixture(vectors, weights, std::move(layout));
}

DensityOperator evolve(const DensityOperator& state, const EvolutionGenerator& gen, double t0,
                       double t1) {
    if (!(state.layout() == gen.layout()))
        throw LayoutError("generator layout does not match the state");
    const std::size_t n = state.dim();
    const ComplexMatrix& v = gen.basis();
    ComplexMatrix eig = v.adjoint() * state.matrix() * v;
    CVector phases(n);
    for (std::size_t u = 0; u < n; ++u) phases[u] = gen.phase(u, t0, t1);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t w = 0; w < n; ++w)
            eig(u, w) *= phases[u] * std::conj(phases[w]);
    return DensityOperator(v * eig * v.adjoint(), state.layout());
}

DensityOperator luders_update(const DensityOperator& state, const ComplexMatrix& projector) {
    ComplexMatrix p = projector;
    if (p.rows() != state.dim()) {
        // Factor-sized projector: lift it onto the first factor of
        // matching dimension.
        const std::string* label = nullptr;
        for (const auto& f : state.layout().factors()) {
            if (f.dim == p.rows()) {
                label = &f.label;
                break;
            }
        }
        if (!label) throw LayoutError("projector matches no factor of the state");
        p = embed(p, state.layout(), {*label});
    }
    const ComplexMatrix conditioned = p * state.matrix() * p;
    const double weight = std::real(trace_product(state.matrix(), p));
    if (!(weight > tol::kStrict))
        throw ConditioningError("conditioning on an event of zero probability");
    return DensityOperator(conditioned * Complex{1.0 / weight, 0.0}, state.layout());
}

DensityOperator dephase(const DensityOperator& state, const ComplexMatrix& basis) {
    if (basis.rows() != state.dim())
        throw LayoutError("dephasing basis does not span the state space");
    require_orthonormal(basis, "dephasing");
    ComplexMatrix eig = basis.adjoint() * state.matrix() * basis;
    for (std::size_t i = 0; i < eig.rows(); ++i)
        for (std::size_t j = 0; j < eig.cols(); ++j)
            if (i != j) eig(i, j) = Complex{0.0, 0.0};
    return DensityOperator(basis * eig * basis.adjoint(), state.layout());
}

DensityOperator reduce(const DensityOperator& state, const std::vector<std::string>& keep) {
    return DensityOperator(partial_trace(state.matrix(), state.layout(), keep),
                           reduced_layout(state.layout(), keep));
}

DensityOperator time_averaged_state(const DensityOperator& state, const EvolutionGenerator& gen,
                                    const DecisionWindow& window) {
    if (!(state.layout() == gen.layout()))
        throw LayoutError("generator layout does not match the state");
    window.validate();
    const std::size_t n = state.dim();
    const ComplexMatrix& v = gen.basis();
    ComplexMatrix eig = v.adjoint() * state.matrix() * v;

    const double t1 = window.start;
    const double t2 = window.end();
    const double g = gen.rate();
    const auto& eps = gen.spectrum();
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t w = 0; w < n; ++w) {
            if (u == w) continue;
            const double delta = g * (eps[u] - eps[w]);
            Complex factor;
            if (gen.profile().constant) {
                const double d = delta * gen.profile().value;
                if (d == 0.0) {
                    factor = Complex{1.0, 0.0};
                } else {
                    // (1/(t2-t1)) * integral exp(-i d t) dt
                    factor = (std::polar(1.0, -d * t2) - std::polar(1.0, -d * t1)) /
                             Complex{0.0, -d * (t2 - t1)};
                }
            } else {
                const auto theta = [&](double t) { return delta * gen.profile().integral(0.0, t); };
                const double re = integrate([&](double t) { return std::cos(theta(t)); }, t1, t2,
                                            tol::kPhaseQuad) /
                                  window.duration;
                const double im = integrate([&](double t) { return -std::sin(theta(t)); }, t1, t2,
                                            tol::kPhaseQuad) /
                                  window.duration;
                factor = Complex{re, im};
            }
            eig(u, w) *= factor;
        }
    }
    return DensityOperator(v * eig * v.adjoint(), state.layout());
}

namespace {

bool commutator_small(const ComplexMatrix& h, const ComplexMatrix& k) {
    const ComplexMatrix c = h * k - k * h;
    return c.max_abs() <= tol::kSelfSimilar;
}

} // namespace

bool check_self_similarity(const EvolutionGenerator& gen, const DecisionWindow& window) {
    window.validate();
    // H(t) and its running integral share the fixed eigenbasis, so the
    // commutator can only pick up floating-point noise; sample anyway.
    const int samples = 7;
    for (int s = 1; s <= samples; ++s) {
        const double t = window.start + window.duration * s / samples;
        const ComplexMatrix h = gen.hamiltonian(t);
        CVector d(gen.dim());
        for (std::size_t u = 0; u < gen.dim(); ++u)
            d[u] = gen.rate() * gen.spectrum()[u] * gen.profile().integral(window.start, t);
        const ComplexMatrix k = gen.basis() * ComplexMatrix::diagonal(d) * gen.basis().adjoint();
        if (!commutator_small(h, k)) return false;
    }
    return true;
}

bool check_self_similarity(const RawGenerator& h, std::size_t dim, const DecisionWindow& window) {
    window.validate();
    // Composite Simpson for the running integral; refined until two
    // consecutive grids agree.
    const auto integral_to = [&](double t, int panels) {
        ComplexMatrix acc(dim, dim);
        const double step = (t - window.start) / (2 * panels);
        for (int p = 0; p < panels; ++p) {
            const double a = window.start + 2 * p * step;
            const ComplexMatrix f0 = h(a);
            const ComplexMatrix f1 = h(a + step);
            const ComplexMatrix f2 = h(a + 2 * step);
            acc = acc + (f0 + f1 * Complex{4.0, 0.0} + f2) * Complex{step / 3.0, 0.0};
        }
        return acc;
    };

    const int samples = 7;
    for (int s = 1; s <= samples; ++s) {
        const double t = window.start + window.duration * s / samples;
        ComplexMatrix k = integral_to(t, 32);
        for (int panels = 64; panels <= 512; panels *= 2) {
            const ComplexMatrix refined = integral_to(t, panels);
            const double drift = (refined - k).max_abs();
            k = refined;
            if (drift < 1e-13) break;
        }
        if (!commutator_small(h(t), k)) return false;
    }
    return true;
}

} // namespace qdt
