#include "qdt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qdt/errors.hpp"

namespace qdt {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::outer(const CVector& u, const CVector& v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const CVector& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix addition with mismatched shapes");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + other.data_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix subtraction with mismatched shapes");
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - other.data_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_)
        throw DimensionError("matrix product with mismatched inner dimension");
    ComplexMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex a = (*this)(i, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                r(i, j) += a * other(k, j);
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(Complex scalar) const {
    ComplexMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * scalar;
    return r;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) { return m * scalar; }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

Complex ComplexMatrix::trace() const {
    if (!square()) throw DimensionError("trace of a non-square matrix");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

CVector ComplexMatrix::apply(const CVector& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector product with mismatched sizes");
    CVector r(rows_, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r[i] += (*this)(i, j) * v[j];
    return r;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance) return false;
    return true;
}

Complex inner(const CVector& u, const CVector& v) {
    if (u.size() != v.size()) throw DimensionError("inner product with mismatched sizes");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm(const CVector& v) { return std::sqrt(std::real(inner(v, v))); }

CVector normalized(const CVector& v) {
    const double n = norm(v);
    if (n == 0.0) throw ModelError("cannot normalize the zero vector");
    CVector r(v);
    for (Complex& z : r) z /= n;
    return r;
}

SpaceLayout::SpaceLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw LayoutError("layout needs at least one factor");
    std::set<std::string> seen;
    for (const Factor& f : factors_) {
        if (f.dim == 0) throw LayoutError("factor '" + f.label + "' has dimension zero");
        if (!seen.insert(f.label).second)
            throw LayoutError("duplicate factor label '" + f.label + "'");
        total_ *= f.dim;
    }
}

bool SpaceLayout::has_label(const std::string& label) const {
    for (const Factor& f : factors_)
        if (f.label == label) return true;
    return false;
}

std::size_t SpaceLayout::position(const std::string& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].label == label) return i;
    throw LayoutError("no factor labeled '" + label + "'");
}

std::size_t SpaceLayout::dim_of(const std::string& label) const {
    return factors_[position(label)].dim;
}

std::vector<std::size_t> SpaceLayout::decompose(std::size_t index) const {
    std::vector<std::size_t> digits(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        digits[i] = index % factors_[i].dim;
        index /= factors_[i].dim;
    }
    return digits;
}

std::size_t SpaceLayout::compose(const std::vector<std::size_t>& digits) const {
    if (digits.size() != factors_.size())
        throw LayoutError("digit count does not match factor count");
    std::size_t index = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (digits[i] >= factors_[i].dim) throw LayoutError("digit out of range");
        index = index * factors_[i].dim + digits[i];
    }
    return index;
}

bool SpaceLayout::operator==(const SpaceLayout& other) const {
    if (factors_.size() != other.factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i].label != other.factors_[i].label || factors_[i].dim != other.factors_[i].dim)
            return false;
    return true;
}

SpaceLayout single_factor(const std::string& label, std::size_t dim) {
    return SpaceLayout({{label, dim}});
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const Complex av = a(ia, ja);
            if (av == Complex{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    r(ia * b.rows() + ib, ja * b.cols() + jb) = av * b(ib, jb);
        }
    return r;
}

CVector tensor_product(const CVector& a, const CVector& b) {
    CVector r(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i * b.size() + j] = a[i] * b[j];
    return r;
}

namespace {

// Positions of `keep` labels (original order) and of the traced-out rest.
void split_positions(const SpaceLayout& layout, const std::vector<std::string>& keep,
                     std::vector<std::size_t>& kept, std::vector<std::size_t>& traced) {
    if (keep.empty()) throw LayoutError("partial trace must keep at least one factor");
    std::set<std::string> keep_set(keep.begin(), keep.end());
    if (keep_set.size() != keep.size()) throw LayoutError("duplicate label in keep list");
    for (const std::string& label : keep)
        if (!layout.has_label(label)) throw LayoutError("no factor labeled '" + label + "'");
    if (keep_set.size() == layout.factor_count())
        throw LayoutError("partial trace must drop at least one factor");
    for (std::size_t i = 0; i < layout.factor_count(); ++i) {
        if (keep_set.count(layout.factor(i).label))
            kept.push_back(i);
        else
            traced.push_back(i);
    }
}

std::size_t mixed_radix_size(const SpaceLayout& layout, const std::vector<std::size_t>& positions) {
    std::size_t n = 1;
    for (std::size_t p : positions) n *= layout.factor(p).dim;
    return n;
}

// Writes the digits of `sub` (mixed radix over `positions`) into `digits`.
void scatter(const SpaceLayout& layout, const std::vector<std::size_t>& positions,
             std::size_t sub, std::vector<std::size_t>& digits) {
    for (std::size_t i = positions.size(); i-- > 0;) {
        const std::size_t d = layout.factor(positions[i]).dim;
        digits[positions[i]] = sub % d;
        sub /= d;
    }
}

} // namespace

SpaceLayout reduced_layout(const SpaceLayout& layout, const std::vector<std::string>& keep) {
    std::vector<std::size_t> kept, traced;
    split_positions(layout, keep, kept, traced);
    std::vector<SpaceLayout::Factor> factors;
    for (std::size_t p : kept) factors.push_back(layout.factor(p));
    return SpaceLayout(factors);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceLayout& layout,
                            const std::vector<std::string>& keep) {
    if (!m.square() || m.rows() != layout.total_dim())
        throw LayoutError("matrix size does not match layout");
    std::vector<std::size_t> kept, traced;
    split_positions(layout, keep, kept, traced);

    const std::size_t kd = mixed_radix_size(layout, kept);
    const std::size_t td = mixed_radix_size(layout, traced);
    ComplexMatrix r(kd, kd);

    std::vector<std::size_t> row(layout.factor_count()), col(layout.factor_count());
    for (std::size_t i = 0; i < kd; ++i) {
        for (std::size_t j = 0; j < kd; ++j) {
            Complex s{0.0, 0.0};
            for (std::size_t t = 0; t < td; ++t) {
                scatter(layout, kept, i, row);
                scatter(layout, traced, t, row);
                scatter(layout, kept, j, col);
                scatter(layout, traced, t, col);
                s += m(layout.compose(row), layout.compose(col));
            }
            r(i, j) = s;
        }
    }
    return r;
}

Complex trace_product(const ComplexMatrix& rho, const ComplexMatrix& op) {
    if (!rho.square() || !op.square() || rho.rows() != op.rows())
        throw DimensionError("trace_product with mismatched sizes");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t k = 0; k < rho.cols(); ++k)
            s += rho(i, k) * op(k, i);
    return s;
}

ComplexMatrix embed(const ComplexMatrix& op, const SpaceLayout& layout,
                    const std::vector<std::string>& labels) {
    std::vector<std::size_t> positions;
    std::set<std::string> seen;
    for (const std::string& label : labels) {
        if (!seen.insert(label).second) throw LayoutError("duplicate label in embed list");
        positions.push_back(layout.position(label));
    }
    std::size_t sub_dim = 1;
    for (std::size_t p : positions) sub_dim *= layout.factor(p).dim;
    if (!op.square() || op.rows() != sub_dim)
        throw LayoutError("operator size does not match the listed factors");

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < layout.factor_count(); ++i)
        if (std::find(positions.begin(), positions.end(), i) == positions.end())
            rest.push_back(i);
    const std::size_t rest_dim = mixed_radix_size(layout, rest);

    const std::size_t n = layout.total_dim();
    ComplexMatrix r(n, n);
    std::vector<std::size_t> row(layout.factor_count()), col(layout.factor_count());
    for (std::size_t i = 0; i < sub_dim; ++i) {
        for (std::size_t j = 0; j < sub_dim; ++j) {
            const Complex v = op(i, j);
            if (v == Complex{0.0, 0.0}) continue;
            for (std::size_t t = 0; t < rest_dim; ++t) {
                scatter(layout, positions, i, row);
                scatter(layout, rest, t, row);
                scatter(layout, positions, j, col);
                scatter(layout, rest, t, col);
                r(layout.compose(row), layout.compose(col)) = v;
            }
        }
    }
    return r;
}

bool positive_semidefinite(const ComplexMatrix& m, double floor) {
    if (!m.square()) return false;
    const std::size_t n = m.rows();
    // Cholesky of m + floor * I; failure of a pivot means an eigenvalue
    // below -floor.
    ComplexMatrix a = m + ComplexMatrix::identity(n) * Complex{floor, 0.0};
    ComplexMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Complex diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * std::conj(l(j, k));
        const double d = std::real(diag);
        if (!(d > 0.0)) return false;
        const double root = std::sqrt(d);
        l(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / root;
        }
    }
    return true;
}

} // namespace qdt
