#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace qdt {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Dense complex matrix, row-major.  Dimensions stay small (tensor
// products of a few two- or three-level factors), so no attempt is made
// at blocking or sparsity.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);
    // |u><v|
    static ComplexMatrix outer(const CVector& u, const CVector& v);
    static ComplexMatrix diagonal(const CVector& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator*(Complex scalar) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    CVector apply(const CVector& v) const;

    double max_abs() const;
    double frobenius_norm() const;
    bool is_hermitian(double tolerance) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m);

// <u|v>, conjugate-linear in the first argument.
Complex inner(const CVector& u, const CVector& v);
double norm(const CVector& v);
CVector normalized(const CVector& v);

// Ordered list of labeled tensor factors.  Composite indices run in
// mixed radix over the factors in declaration order, leftmost factor
// slowest.
class SpaceLayout {
public:
    struct Factor {
        std::string label;
        std::size_t dim;
    };

    SpaceLayout() = default;
    explicit SpaceLayout(std::vector<Factor> factors);

    std::size_t total_dim() const { return total_; }
    std::size_t factor_count() const { return factors_.size(); }
    const Factor& factor(std::size_t i) const { return factors_[i]; }
    const std::vector<Factor>& factors() const { return factors_; }

    bool has_label(const std::string& label) const;
    std::size_t position(const std::string& label) const;
    std::size_t dim_of(const std::string& label) const;

    // Mixed-radix helpers.
    std::vector<std::size_t> decompose(std::size_t index) const;
    std::size_t compose(const std::vector<std::size_t>& digits) const;

    bool operator==(const SpaceLayout& other) const;

private:
    std::vector<Factor> factors_;
    std::size_t total_ = 1;
};

// Single-factor convenience layout.
SpaceLayout single_factor(const std::string& label, std::size_t dim);

// Kronecker product; result index = a-index * b.dim + b-index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
CVector tensor_product(const CVector& a, const CVector& b);

// Partial trace over all factors NOT in `keep`.  `keep` must be a
// nonempty proper subset of the layout's labels; the result is ordered
// by the original declaration order of the kept factors.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SpaceLayout& layout,
                            const std::vector<std::string>& keep);

// The layout of a partial_trace result.
SpaceLayout reduced_layout(const SpaceLayout& layout, const std::vector<std::string>& keep);

// Tr(rho * op) without forming the product.
Complex trace_product(const ComplexMatrix& rho, const ComplexMatrix& op);

// Lift an operator on the listed factors (in listed order) to the full
// space, acting as identity elsewhere.  Factors need not be adjacent.
ComplexMatrix embed(const ComplexMatrix& op, const SpaceLayout& layout,
                    const std::vector<std::string>& labels);

// Cholesky screening of rho + floor * I.  Hermiticity is assumed.
bool positive_semidefinite(const ComplexMatrix& m, double floor);

} // namespace qdt
