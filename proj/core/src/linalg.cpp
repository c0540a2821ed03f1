#include "polyangle/linalg.hpp"

#include <utility>

namespace polyangle {

namespace {

/**
 * In-place reduced row echelon form. Returns the pivot column of each
 * eliminated row, in order.
 */
std::vector<int> rref(RatMatrix& m, int cols) {
    std::vector<int> pivot_cols;
    int row = 0;
    const int rows = static_cast<int>(m.size());
    for (int col = 0; col < cols && row < rows; ++col) {
        int pivot = -1;
        for (int r = row; r < rows; ++r) {
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(m[row], m[pivot]);
        const Rational inv = m[row][col];
        for (int c = col; c < cols; ++c) {
            m[row][c] /= inv;
        }
        for (int r = 0; r < rows; ++r) {
            if (r == row || m[r][col] == 0) {
                continue;
            }
            const Rational factor = m[r][col];
            for (int c = col; c < cols; ++c) {
                m[r][c] -= factor * m[row][c];
            }
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

}  // namespace

int matrix_rank(RatMatrix m) {
    if (m.empty()) {
        return 0;
    }
    const int cols = static_cast<int>(m[0].size());
    return static_cast<int>(rref(m, cols).size());
}

std::vector<RatRow> nullspace(const RatMatrix& m, int cols) {
    RatMatrix work = m;
    const std::vector<int> pivot_cols = rref(work, cols);

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_cols) {
        is_pivot[c] = true;
    }

    std::vector<RatRow> basis;
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) {
            continue;
        }
        RatRow v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
            v[pivot_cols[r]] = -work[r][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace polyangle
