#pragma once

// Exact linear algebra over prime fields and over the integers.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace kderiv {

bool is_prime(int q);

/// Dense matrix over F_q. Maps act on column vectors: rows = target dim.
class MatFq {
public:
    MatFq() = default;
    MatFq(int q, int rows, int cols);
    MatFq(int q, int rows, int cols, const std::vector<int>& entries);  // row-major

    static MatFq identity(int q, int n);
    static MatFq zero(int q, int rows, int cols) { return MatFq(q, rows, cols); }

    int q() const { return q_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(int r, int c, int v);
    const std::vector<int>& data() const { return data_; }

    bool is_zero() const;
    MatFq transpose() const;
    MatFq operator*(const MatFq& o) const;
    MatFq operator+(const MatFq& o) const;
    MatFq operator-(const MatFq& o) const;
    MatFq neg() const;
    bool operator==(const MatFq& o) const = default;

    /// Block matrices.
    static MatFq hstack(const std::vector<MatFq>& blocks, int q, int rows);
    static MatFq vstack(const std::vector<MatFq>& blocks, int q, int cols);
    static MatFq direct_sum(const MatFq& a, const MatFq& b);
    MatFq submatrix(int r0, int c0, int nr, int nc) const;

    std::string key() const;

private:
    int q_ = 2;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> data_;
};

int inv_mod(int a, int q);

/// Reduced row echelon form; returns pivot columns.
MatFq rref(const MatFq& m, std::vector<int>* pivots = nullptr);
int rank(const MatFq& m);
/// Columns form a basis of the kernel.
MatFq kernel_basis(const MatFq& m);

struct Cokernel {
    int dim = 0;
    MatFq projection;  // dim × rows(M), surjective, kernel = column span of M
    MatFq section;     // rows(M) × dim, projection ∘ section = id
};
/// Canonical cokernel: coordinates are the non-pivot coordinates of the
/// reduced echelon form of the column span.
Cokernel cokernel(const MatFq& m);

/// Some x with m x = b, or false.
bool solve(const MatFq& m, const MatFq& b, MatFq* x);
bool is_invertible(const MatFq& m);
MatFq inverse(const MatFq& m);

/// Every rows×cols matrix over F_q in lexicographic order of entries.
std::vector<MatFq> all_matrices(int q, int rows, int cols);
/// All invertible n×n matrices, lexicographic.
std::vector<MatFq> general_linear(int q, int n);

// -- integers -------------------------------------------------------------------

using BigInt = boost::multiprecision::cpp_int;

class MatZ {
public:
    MatZ() = default;
    MatZ(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}
    MatZ(int rows, int cols, const std::vector<long long>& entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const BigInt& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    MatZ transpose() const;
    MatZ operator*(const MatZ& o) const;
    bool operator==(const MatZ& o) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BigInt> data_;
};

struct SmithResult {
    std::vector<BigInt> invariant_factors;  // nonzero diagonal, d1 | d2 | ...
    int rank = 0;
    int free_rank = 0;  // of the cokernel Z^rows / column span
};

/// Smith normal form of M viewed as a map Z^cols -> Z^rows.
SmithResult smith_normal_form(const MatZ& m);

/// Cokernel of a relation matrix with relators as rows and generators as
/// columns: Z^cols / row span. `coords` has one row per generator giving
/// its image in the decomposition (torsion coordinates first, reduced mod
/// their factors; then free coordinates). Factors equal to 1 are dropped.
struct RelationCokernel {
    std::vector<BigInt> torsion;
    int free_rank = 0;
    std::vector<std::vector<BigInt>> coords;
};
RelationCokernel relation_cokernel(const MatZ& relations);

}  // namespace kderiv
