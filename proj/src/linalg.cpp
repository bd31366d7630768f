#include "kec/linalg.hpp"

#include "kec/error.hpp"

namespace kec {

int rat_rank(RatMat a) {
    if (a.empty()) return 0;
    const int m = static_cast<int>(a.size());
    const int n = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int piv = -1;
        for (int i = rank; i < m; ++i)
            if (a[i][col].sgn() != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int i = 0; i < m; ++i) {
            if (i == rank || a[i][col].sgn() == 0) continue;
            Rat f = a[i][col] / a[rank][col];
            for (int j = col; j < n; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::optional<RatVec> rat_solve_square(RatMat a, RatVec b) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (a[i][col].sgn() != 0) { piv = i; break; }
        if (piv < 0) return std::nullopt;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        Rat d = a[col][col];
        for (int j = col; j < n; ++j) a[col][j] /= d;
        b[col] /= d;
        for (int i = 0; i < n; ++i) {
            if (i == col || a[i][col].sgn() == 0) continue;
            Rat f = a[i][col];
            for (int j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    return b;
}

std::optional<RatVec> rat_null_vector(const RatMat& a, int ncols) {
    const int m = static_cast<int>(a.size());
    RatMat w = a;
    // reduced row echelon; track pivot column per row
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < ncols && row < m; ++col) {
        int piv = -1;
        for (int i = row; i < m; ++i)
            if (w[i][col].sgn() != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(w[row], w[piv]);
        Rat d = w[row][col];
        for (int j = col; j < ncols; ++j) w[row][j] /= d;
        for (int i = 0; i < m; ++i) {
            if (i == row || w[i][col].sgn() == 0) continue;
            Rat f = w[i][col];
            for (int j = col; j < ncols; ++j) w[i][j] -= f * w[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    int free_col = -1;
    for (int c = 0; c < ncols; ++c)
        if (!is_pivot[c]) { free_col = c; break; }
    if (free_col < 0) return std::nullopt;
    RatVec x(ncols, Rat(0));
    x[free_col] = Rat(1);
    for (size_t i = 0; i < pivot_col.size(); ++i)
        x[pivot_col[i]] = -w[i][free_col];
    return x;
}

std::vector<int> rat_extend_basis(const RatMat& a, int ncols,
                                  std::vector<int> chosen,
                                  const std::vector<int>& candidates) {
    const int m = static_cast<int>(a.size());
    (void)ncols;
    // Maintain an eliminated copy of the chosen columns (m x k).
    RatMat elim(m);
    std::vector<int> pivot_row_of; // per chosen column, its pivot row
    std::vector<bool> row_used(m, false);

    auto add_column = [&](int col) -> bool {
        RatVec v(m);
        for (int i = 0; i < m; ++i) v[i] = a[i][col];
        // eliminate against existing pivots
        for (size_t c = 0; c < pivot_row_of.size(); ++c) {
            int pr = pivot_row_of[c];
            if (v[pr].sgn() == 0) continue;
            Rat f = v[pr] / elim[pr][c];
            for (int i = 0; i < m; ++i) v[i] -= f * elim[i][c];
        }
        int pr = -1;
        for (int i = 0; i < m; ++i)
            if (!row_used[i] && v[i].sgn() != 0) { pr = i; break; }
        if (pr < 0) return false; // dependent
        row_used[pr] = true;
        pivot_row_of.push_back(pr);
        for (int i = 0; i < m; ++i) elim[i].push_back(v[i]);
        return true;
    };

    std::vector<int> out;
    for (int col : chosen) {
        KEC_CHECK(add_column(col), "rat_extend_basis: seed columns dependent");
        out.push_back(col);
    }
    for (int col : candidates) {
        if (static_cast<int>(out.size()) == m) break;
        bool already = false;
        for (int c : out)
            if (c == col) { already = true; break; }
        if (already) continue;
        if (add_column(col)) out.push_back(col);
    }
    return out;
}

} // namespace kec
