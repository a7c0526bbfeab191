#include "kderiv/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "kderiv/errors.hpp"

namespace kderiv {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

namespace {
int mod(long long v, int q) {
    long long r = v % q;
    return static_cast<int>(r < 0 ? r + q : r);
}
}  // namespace

int inv_mod(int a, int q) {
    a = mod(a, q);
    if (a == 0) throw InvalidArgument("inverse of zero mod q");
    int r = 1;
    for (int e = q - 2, b = a; e > 0; e >>= 1) {
        if (e & 1) r = static_cast<int>(static_cast<long long>(r) * b % q);
        b = static_cast<int>(static_cast<long long>(b) * b % q);
    }
    return r;
}

MatFq::MatFq(int q, int rows, int cols)
    : q_(q), rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0) {
    if (!is_prime(q)) throw InvalidArgument("q = " + std::to_string(q) + " is not prime");
    if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix shape");
}

MatFq::MatFq(int q, int rows, int cols, const std::vector<int>& entries) : MatFq(q, rows, cols) {
    if (entries.size() != data_.size()) throw InvalidArgument("matrix entry count does not match shape");
    for (std::size_t i = 0; i < entries.size(); ++i) data_[i] = mod(entries[i], q);
}

MatFq MatFq::identity(int q, int n) {
    MatFq m(q, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void MatFq::set(int r, int c, int v) { data_[static_cast<std::size_t>(r) * cols_ + c] = mod(v, q_); }

bool MatFq::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](int v) { return v == 0; });
}

MatFq MatFq::transpose() const {
    MatFq t(q_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

MatFq MatFq::operator*(const MatFq& o) const {
    if (cols_ != o.rows_ || q_ != o.q_) throw InvalidArgument("matrix product shape mismatch");
    MatFq p(q_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const int a = at(r, k);
            if (a == 0) continue;
            for (int c = 0; c < o.cols_; ++c)
                p.data_[static_cast<std::size_t>(r) * o.cols_ + c] =
                    (p.data_[static_cast<std::size_t>(r) * o.cols_ + c] + a * o.at(k, c)) % q_;
        }
    return p;
}

MatFq MatFq::operator+(const MatFq& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix sum shape mismatch");
    MatFq s(q_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = (data_[i] + o.data_[i]) % q_;
    return s;
}

MatFq MatFq::neg() const {
    MatFq s(q_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = (q_ - data_[i]) % q_;
    return s;
}

MatFq MatFq::operator-(const MatFq& o) const { return *this + o.neg(); }

MatFq MatFq::hstack(const std::vector<MatFq>& blocks, int q, int rows) {
    int cols = 0;
    for (const auto& b : blocks) cols += b.cols();
    MatFq m(q, rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw InvalidArgument("hstack row mismatch");
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < b.cols(); ++c) m.set(r, off + c, b.at(r, c));
        off += b.cols();
    }
    return m;
}

MatFq MatFq::vstack(const std::vector<MatFq>& blocks, int q, int cols) {
    int rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    MatFq m(q, rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw InvalidArgument("vstack column mismatch");
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < cols; ++c) m.set(off + r, c, b.at(r, c));
        off += b.rows();
    }
    return m;
}

MatFq MatFq::direct_sum(const MatFq& a, const MatFq& b) {
    MatFq m(a.q(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) m.set(r, c, a.at(r, c));
    for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) m.set(a.rows() + r, a.cols() + c, b.at(r, c));
    return m;
}

MatFq MatFq::submatrix(int r0, int c0, int nr, int nc) const {
    MatFq m(q_, nr, nc);
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) m.set(r, c, at(r0 + r, c0 + c));
    return m;
}

std::string MatFq::key() const {
    std::string s = std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
    for (int v : data_) {
        s += std::to_string(v);
        s += q_ > 10 ? "," : "";
    }
    return s;
}

MatFq rref(const MatFq& m, std::vector<int>* pivots) {
    MatFq a = m;
    const int q = m.q();
    std::vector<int> piv;
    int row = 0;
    for (int c = 0; c < a.cols() && row < a.rows(); ++c) {
        int p = -1;
        for (int r = row; r < a.rows(); ++r)
            if (a.at(r, c) != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int k = 0; k < a.cols(); ++k) {
                const int t = a.at(p, k);
                a.set(p, k, a.at(row, k));
                a.set(row, k, t);
            }
        const int inv = inv_mod(a.at(row, c), q);
        for (int k = 0; k < a.cols(); ++k) a.set(row, k, a.at(row, k) * inv);
        for (int r = 0; r < a.rows(); ++r) {
            if (r == row || a.at(r, c) == 0) continue;
            const int f = a.at(r, c);
            for (int k = 0; k < a.cols(); ++k) a.set(r, k, a.at(r, k) - f * a.at(row, k));
        }
        piv.push_back(c);
        ++row;
    }
    if (pivots) *pivots = piv;
    return a;
}

int rank(const MatFq& m) {
    std::vector<int> piv;
    rref(m, &piv);
    return static_cast<int>(piv.size());
}

MatFq kernel_basis(const MatFq& m) {
    std::vector<int> piv;
    const MatFq r = rref(m, &piv);
    std::vector<bool> is_piv(m.cols(), false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free;
    for (int c = 0; c < m.cols(); ++c)
        if (!is_piv[c]) free.push_back(c);
    MatFq k(m.q(), m.cols(), static_cast<int>(free.size()));
    for (std::size_t j = 0; j < free.size(); ++j) {
        k.set(free[j], static_cast<int>(j), 1);
        for (std::size_t i = 0; i < piv.size(); ++i)
            k.set(piv[i], static_cast<int>(j), -r.at(static_cast<int>(i), free[j]));
    }
    return k;
}

Cokernel cokernel(const MatFq& m) {
    std::vector<int> piv;
    const MatFq r = rref(m.transpose(), &piv);
    const int n = m.rows();
    std::vector<bool> is_piv(n, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> np;
    for (int i = 0; i < n; ++i)
        if (!is_piv[i]) np.push_back(i);
    Cokernel out;
    out.dim = static_cast<int>(np.size());
    out.projection = MatFq(m.q(), out.dim, n);
    out.section = MatFq(m.q(), n, out.dim);
    for (int j = 0; j < out.dim; ++j) {
        out.projection.set(j, np[j], 1);
        out.section.set(np[j], j, 1);
        for (std::size_t k = 0; k < piv.size(); ++k)
            out.projection.set(j, piv[k], -r.at(static_cast<int>(k), np[j]));
    }
    return out;
}

bool solve(const MatFq& m, const MatFq& b, MatFq* x) {
    if (b.rows() != m.rows()) throw InvalidArgument("solve: shape mismatch");
    const MatFq aug = MatFq::hstack({m, b}, m.q(), m.rows());
    std::vector<int> piv;
    const MatFq r = rref(aug, &piv);
    for (int p : piv)
        if (p >= m.cols()) return false;
    if (x) {
        MatFq sol(m.q(), m.cols(), b.cols());
        for (std::size_t i = 0; i < piv.size(); ++i)
            for (int c = 0; c < b.cols(); ++c) sol.set(piv[i], c, r.at(static_cast<int>(i), m.cols() + c));
        *x = sol;
    }
    return true;
}

bool is_invertible(const MatFq& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

MatFq inverse(const MatFq& m) {
    if (!is_invertible(m)) throw InvalidArgument("matrix is not invertible");
    MatFq x;
    solve(m, MatFq::identity(m.q(), m.rows()), &x);
    return x;
}

std::vector<MatFq> all_matrices(int q, int rows, int cols) {
    const int n = rows * cols;
    long long count = 1;
    for (int i = 0; i < n; ++i) {
        count *= q;
        if (count > 50'000'000) throw InvalidArgument("all_matrices: too many matrices");
    }
    std::vector<MatFq> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<int> e(n, 0);
    for (long long k = 0; k < count; ++k) {
        out.emplace_back(q, rows, cols, e);
        for (int i = n - 1; i >= 0; --i) {
            if (++e[i] < q) break;
            e[i] = 0;
        }
    }
    return out;
}

std::vector<MatFq> general_linear(int q, int n) {
    std::vector<MatFq> out;
    for (auto& m : all_matrices(q, n, n))
        if (is_invertible(m)) out.push_back(std::move(m));
    return out;
}

// -- integers -------------------------------------------------------------------

MatZ::MatZ(int rows, int cols, const std::vector<long long>& entries) : MatZ(rows, cols) {
    if (entries.size() != data_.size()) throw InvalidArgument("matrix entry count does not match shape");
    for (std::size_t i = 0; i < entries.size(); ++i) data_[i] = entries[i];
}

MatZ MatZ::transpose() const {
    MatZ t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

MatZ MatZ::operator*(const MatZ& o) const {
    if (cols_ != o.rows_) throw InvalidArgument("matrix product shape mismatch");
    MatZ p(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            if (at(r, k) == 0) continue;
            for (int c = 0; c < o.cols_; ++c) p.at(r, c) += at(r, k) * o.at(k, c);
        }
    return p;
}

namespace {

struct Work {
    std::vector<std::vector<BigInt>> a;  // relators × generators
    std::vector<std::vector<BigInt>> v;  // generators × generators, column transform
    int rows = 0, cols = 0;

    void swap_cols(int i, int j) {
        for (auto& r : a) std::swap(r[i], r[j]);
        for (auto& r : v) std::swap(r[i], r[j]);
    }
    // col j -= f * col i
    void sub_col(int j, int i, const BigInt& f) {
        for (auto& r : a) r[j] -= f * r[i];
        for (auto& r : v) r[j] -= f * r[i];
    }
    void neg_col(int i) {
        for (auto& r : a) r[i] = -r[i];
        for (auto& r : v) r[i] = -r[i];
    }
};

// Diagonalizes w.a in place; returns the diagonal.
std::vector<BigInt> diagonalize(Work& w) {
    std::vector<BigInt> diag;
    const int limit = std::min(w.rows, w.cols);
    for (int t = 0; t < limit; ++t) {
        for (;;) {
            int pr = -1, pc = -1;
            BigInt best = 0;
            for (int r = t; r < w.rows; ++r)
                for (int c = t; c < w.cols; ++c) {
                    const BigInt x = abs(w.a[r][c]);
                    if (x != 0 && (best == 0 || x < best)) {
                        best = x;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr < 0) return diag;
            std::swap(w.a[t], w.a[pr]);
            if (pc != t) w.swap_cols(t, pc);
            if (w.a[t][t] < 0) w.neg_col(t);
            bool clean = true;
            for (int r = t + 1; r < w.rows; ++r) {
                if (w.a[r][t] == 0) continue;
                const BigInt f = w.a[r][t] / w.a[t][t];
                for (int c = t; c < w.cols; ++c) w.a[r][c] -= f * w.a[t][c];
                if (w.a[r][t] != 0) clean = false;
            }
            for (int c = t + 1; c < w.cols; ++c) {
                if (w.a[t][c] == 0) continue;
                const BigInt f = w.a[t][c] / w.a[t][t];
                w.sub_col(c, t, f);
                if (w.a[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility: fold an offending row into row t
            int bad = -1;
            for (int r = t + 1; r < w.rows && bad < 0; ++r)
                for (int c = t + 1; c < w.cols; ++c)
                    if (w.a[r][c] % w.a[t][t] != 0) {
                        bad = r;
                        break;
                    }
            if (bad < 0) break;
            for (int c = t; c < w.cols; ++c) w.a[t][c] += w.a[bad][c];
        }
        diag.push_back(w.a[t][t]);
    }
    return diag;
}

Work make_work(const MatZ& m) {
    Work w;
    w.rows = m.rows();
    w.cols = m.cols();
    w.a.assign(w.rows, std::vector<BigInt>(w.cols));
    for (int r = 0; r < w.rows; ++r)
        for (int c = 0; c < w.cols; ++c) w.a[r][c] = m.at(r, c);
    w.v.assign(w.cols, std::vector<BigInt>(w.cols));
    for (int i = 0; i < w.cols; ++i) w.v[i][i] = 1;
    return w;
}

}  // namespace

SmithResult smith_normal_form(const MatZ& m) {
    Work w = make_work(m);
    SmithResult out;
    out.invariant_factors = diagonalize(w);
    out.rank = static_cast<int>(out.invariant_factors.size());
    out.free_rank = m.rows() - out.rank;
    return out;
}

RelationCokernel relation_cokernel(const MatZ& relations) {
    Work w = make_work(relations);
    // Drop zero and duplicate rows before reducing; they do not change the span.
    {
        std::vector<std::vector<BigInt>> rows;
        for (auto& r : w.a) {
            if (std::all_of(r.begin(), r.end(), [](const BigInt& x) { return x == 0; })) continue;
            if (std::find(rows.begin(), rows.end(), r) != rows.end()) continue;
            rows.push_back(r);
        }
        w.a = std::move(rows);
        w.rows = static_cast<int>(w.a.size());
    }
    const std::vector<BigInt> diag = diagonalize(w);
    const int rk = static_cast<int>(diag.size());
    RelationCokernel out;
    std::vector<int> keep_torsion;
    for (int k = 0; k < rk; ++k)
        if (diag[k] != 1) {
            keep_torsion.push_back(k);
            out.torsion.push_back(diag[k]);
        }
    out.free_rank = w.cols - rk;
    out.coords.assign(w.cols, {});
    for (int j = 0; j < w.cols; ++j) {
        for (int k : keep_torsion) {
            BigInt x = w.v[j][k] % diag[k];
            if (x < 0) x += diag[k];
            out.coords[j].push_back(x);
        }
        for (int k = rk; k < w.cols; ++k) out.coords[j].push_back(w.v[j][k]);
    }
    // Sign convention: in each free coordinate the first nonzero image is positive.
    const std::size_t nt = keep_torsion.size();
    for (int f = 0; f < out.free_rank; ++f) {
        for (int j = 0; j < w.cols; ++j) {
            const BigInt& x = out.coords[j][nt + f];
            if (x == 0) continue;
            if (x < 0)
                for (auto& row : out.coords) row[nt + f] = -row[nt + f];
            break;
        }
    }
    return out;
}

}  // namespace kderiv
