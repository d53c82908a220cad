#pragma once

#include <span>
#include <vector>

#include "slfr/field.hpp"
#include "slfr/subsets.hpp"

namespace slfr {

/// Dense row-major matrix over GF(q). Rows and columns are 0-based here;
/// the demand-matrix helpers below take the 1-based user/leader indexing
/// used everywhere else. The referenced Field must outlive the matrix.
/// Treated as immutable once populated; all free operations are pure.
class GfMatrix {
public:
    GfMatrix(const Field& f, int rows, int cols);
    GfMatrix(const Field& f, int rows, int cols, std::vector<Elem> entries);
    static GfMatrix identity(const Field& f, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *field_; }

    Elem at(int r, int c) const;
    void set(int r, int c, Elem v);
    std::span<const Elem> row(int r) const;

    bool operator==(const GfMatrix& o) const;

private:
    const Field* field_;
    int rows_, cols_;
    std::vector<Elem> entries_;
};

/// Rank over GF(q) via Gaussian elimination with field inverses.
int rank(const GfMatrix& M);
/// Determinant; the 0x0 matrix has determinant 1. Throws NotSquare.
Elem det(const GfMatrix& M);
/// Rows/cols are sorted 0-based index sets. Throws IndexOutOfRange.
GfMatrix submatrix(const GfMatrix& M, const std::vector<int>& row_set, const std::vector<int>& col_set);
GfMatrix transpose(const GfMatrix& M);
GfMatrix matmul(const GfMatrix& A, const GfMatrix& B);

/// Row submatrix selected by 1-based user indices, all columns.
GfMatrix user_rows(const GfMatrix& D, const UserSet& users);

/// Greedy lowest-index scan of the demand matrix: a user joins the leader
/// set iff its row increases the running rank. Deterministic; the result
/// is the lexicographically smallest full-rank leader set.
LeaderSet select_leaders(const GfMatrix& D);

/// Re-expresses every demand row in the basis of the leaders' rows:
/// returns the K x |L| matrix X with X[k] * D_L = D[k]; leader rows come
/// out as unit vectors. Throws Inconsistent if some row is outside the
/// leaders' row space (cannot happen for a valid leader set).
GfMatrix express_in_leader_basis(const GfMatrix& D, const LeaderSet& L);

} // namespace slfr
