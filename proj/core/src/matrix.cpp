#include "slfr/matrix.hpp"

#include <string>

namespace slfr {

GfMatrix::GfMatrix(const Field& f, int rows, int cols)
    : field_(&f), rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows < 0 || cols < 0) throw IndexOutOfRange("negative matrix dimension");
}

GfMatrix::GfMatrix(const Field& f, int rows, int cols, std::vector<Elem> entries)
    : field_(&f), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw IndexOutOfRange("negative matrix dimension");
    if (entries_.size() != static_cast<std::size_t>(rows) * cols)
        throw BadLength("entry count does not match matrix shape");
    for (Elem v : entries_) f.check(v);
}

GfMatrix GfMatrix::identity(const Field& f, int n) {
    GfMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Elem GfMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw IndexOutOfRange("matrix index (" + std::to_string(r) + ", " + std::to_string(c) + ")");
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
}

void GfMatrix::set(int r, int c, Elem v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw IndexOutOfRange("matrix index (" + std::to_string(r) + ", " + std::to_string(c) + ")");
    entries_[static_cast<std::size_t>(r) * cols_ + c] = field_->check(v);
}

std::span<const Elem> GfMatrix::row(int r) const {
    if (r < 0 || r >= rows_) throw IndexOutOfRange("matrix row " + std::to_string(r));
    return {entries_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
}

bool GfMatrix::operator==(const GfMatrix& o) const {
    return *field_ == *o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

namespace {

// in-place elimination on a copy; returns (rank, swap parity, pivot product)
struct EliminationResult {
    int rank = 0;
    int swaps = 0;
    Elem pivot_product = 1;
};

EliminationResult eliminate(const Field& f, std::vector<Elem>& a, int rows, int cols) {
    EliminationResult res;
    int prow = 0;
    auto at = [&](int r, int c) -> Elem& { return a[static_cast<std::size_t>(r) * cols + c]; };
    for (int c = 0; c < cols && prow < rows; ++c) {
        int sel = -1;
        for (int r = prow; r < rows; ++r)
            if (at(r, c) != 0) { sel = r; break; }
        if (sel < 0) continue;
        if (sel != prow) {
            for (int j = 0; j < cols; ++j) std::swap(at(sel, j), at(prow, j));
            ++res.swaps;
        }
        const Elem pivot = at(prow, c);
        res.pivot_product = f.mul(res.pivot_product, pivot);
        const Elem pinv = f.inv(pivot);
        for (int r = prow + 1; r < rows; ++r) {
            const Elem factor = f.mul(at(r, c), pinv);
            if (factor == 0) continue;
            for (int j = c; j < cols; ++j)
                at(r, j) = f.sub(at(r, j), f.mul(factor, at(prow, j)));
        }
        ++prow;
        ++res.rank;
    }
    return res;
}

} // namespace

int rank(const GfMatrix& M) {
    std::vector<Elem> a;
    a.reserve(static_cast<std::size_t>(M.rows()) * M.cols());
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c) a.push_back(M.at(r, c));
    return eliminate(M.field(), a, M.rows(), M.cols()).rank;
}

Elem det(const GfMatrix& M) {
    if (M.rows() != M.cols())
        throw NotSquare("determinant of a " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) + " matrix");
    const int n = M.rows();
    if (n == 0) return 1; // empty product convention
    std::vector<Elem> a;
    a.reserve(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a.push_back(M.at(r, c));
    const auto res = eliminate(M.field(), a, n, n);
    if (res.rank < n) return 0;
    const Field& f = M.field();
    return f.mul(f.sign(static_cast<std::uint64_t>(res.swaps)), res.pivot_product);
}

GfMatrix submatrix(const GfMatrix& M, const std::vector<int>& row_set, const std::vector<int>& col_set) {
    for (int r : row_set)
        if (r < 0 || r >= M.rows()) throw IndexOutOfRange("submatrix row " + std::to_string(r));
    for (int c : col_set)
        if (c < 0 || c >= M.cols()) throw IndexOutOfRange("submatrix column " + std::to_string(c));
    GfMatrix out(M.field(), static_cast<int>(row_set.size()), static_cast<int>(col_set.size()));
    for (std::size_t i = 0; i < row_set.size(); ++i)
        for (std::size_t j = 0; j < col_set.size(); ++j)
            out.set(static_cast<int>(i), static_cast<int>(j), M.at(row_set[i], col_set[j]));
    return out;
}

GfMatrix transpose(const GfMatrix& M) {
    GfMatrix out(M.field(), M.cols(), M.rows());
    for (int r = 0; r < M.rows(); ++r)
        for (int c = 0; c < M.cols(); ++c) out.set(c, r, M.at(r, c));
    return out;
}

GfMatrix matmul(const GfMatrix& A, const GfMatrix& B) {
    if (A.field() != B.field()) throw FieldMismatch("matrix product across different fields");
    if (A.cols() != B.rows()) throw BadLength("inner dimensions do not match");
    const Field& f = A.field();
    GfMatrix out(f, A.rows(), B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int k = 0; k < A.cols(); ++k) {
            const Elem aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < B.cols(); ++j)
                out.set(i, j, f.add(out.at(i, j), f.mul(aik, B.at(k, j))));
        }
    return out;
}

GfMatrix user_rows(const GfMatrix& D, const UserSet& users) {
    validate_user_set(users, D.rows());
    GfMatrix out(D.field(), static_cast<int>(users.size()), D.cols());
    for (std::size_t i = 0; i < users.size(); ++i)
        for (int c = 0; c < D.cols(); ++c) out.set(static_cast<int>(i), c, D.at(users[i] - 1, c));
    return out;
}

LeaderSet select_leaders(const GfMatrix& D) {
    const Field& f = D.field();
    const int n = D.cols();
    // running reduced basis: (pivot column, normalized row)
    std::vector<std::pair<int, std::vector<Elem>>> basis;
    LeaderSet leaders;
    for (int k = 0; k < D.rows(); ++k) {
        std::vector<Elem> v(D.row(k).begin(), D.row(k).end());
        for (const auto& [pc, b] : basis) {
            const Elem c = v[pc];
            if (c == 0) continue;
            for (int j = 0; j < n; ++j) v[j] = f.sub(v[j], f.mul(c, b[j]));
        }
        int pivot = -1;
        for (int j = 0; j < n; ++j)
            if (v[j] != 0) { pivot = j; break; }
        if (pivot < 0) continue;
        const Elem pinv = f.inv(v[pivot]);
        for (int j = 0; j < n; ++j) v[j] = f.mul(v[j], pinv);
        basis.emplace_back(pivot, std::move(v));
        leaders.users.push_back(k + 1);
    }
    return leaders;
}

GfMatrix express_in_leader_basis(const GfMatrix& D, const LeaderSet& L) {
    const Field& f = D.field();
    const int K = D.rows();
    const int n = D.cols();
    const int r = L.size();
    // Solve x_k * D_L = y_k for all k at once: eliminate the N x (r + K)
    // system [D_L^T | D^T].
    const int cols = r + K;
    std::vector<Elem> a(static_cast<std::size_t>(n) * cols, 0);
    auto at = [&](int row, int col) -> Elem& { return a[static_cast<std::size_t>(row) * cols + col]; };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n; ++j) at(j, i) = D.at(L.users[i] - 1, j);
    for (int k = 0; k < K; ++k)
        for (int j = 0; j < n; ++j) at(j, r + k) = D.at(k, j);

    std::vector<int> pivot_row_of(r, -1);
    int prow = 0;
    for (int c = 0; c < r && prow < n; ++c) {
        int sel = -1;
        for (int row = prow; row < n; ++row)
            if (at(row, c) != 0) { sel = row; break; }
        if (sel < 0) continue;
        for (int j = 0; j < cols; ++j) std::swap(at(sel, j), at(prow, j));
        const Elem pinv = f.inv(at(prow, c));
        for (int j = 0; j < cols; ++j) at(prow, j) = f.mul(at(prow, j), pinv);
        for (int row = 0; row < n; ++row) {
            if (row == prow) continue;
            const Elem factor = at(row, c);
            if (factor == 0) continue;
            for (int j = 0; j < cols; ++j)
                at(row, j) = f.sub(at(row, j), f.mul(factor, at(prow, j)));
        }
        pivot_row_of[c] = prow;
        ++prow;
    }
    for (int c = 0; c < r; ++c)
        if (pivot_row_of[c] < 0) throw Inconsistent("leader rows are not linearly independent");
    // rows past the pivots must have vanished for every demand column
    for (int row = prow; row < n; ++row)
        for (int k = 0; k < K; ++k)
            if (at(row, r + k) != 0)
                throw Inconsistent("demand of user " + std::to_string(k + 1) + " is outside the leaders' row space");

    GfMatrix X(f, K, r);
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < r; ++i) X.set(k, i, at(pivot_row_of[i], r + k));
    return X;
}

} // namespace slfr
