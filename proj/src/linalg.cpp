#include "linblock/linalg.hpp"

namespace linblock {

std::size_t rref(const Field& f, Matrix& m, std::size_t ncols) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        auto& prow = m[rank];
        const Elem scale = f.inv(prow[col]);
        for (std::size_t j = col; j < ncols; ++j) prow[j] = f.mul(prow[j], scale);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col] == 0) continue;
            const Elem factor = m[i][col];
            auto& row = m[i];
            for (std::size_t j = col; j < ncols; ++j)
                if (prow[j]) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
        }
        ++rank;
    }
    m.resize(rank);
    return rank;
}

std::vector<std::size_t> pivot_columns(const Matrix& echelon) {
    std::vector<std::size_t> out;
    out.reserve(echelon.size());
    for (const auto& row : echelon) {
        std::size_t c = 0;
        while (c < row.size() && row[c] == 0) ++c;
        out.push_back(c);
    }
    return out;
}

Matrix null_space(const Field& f, Matrix rows, std::size_t ncols) {
    rref(f, rows, ncols);
    const auto pivots = pivot_columns(rows);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(ncols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r) v[pivots[r]] = f.neg(rows[r][free]);
        basis.push_back(std::move(v));
    }
    rref(f, basis, ncols);
    return basis;
}

void reduce_against(const Field& f, const Matrix& echelon, const std::vector<std::size_t>& pivots,
                    std::span<Elem> v) {
    for (std::size_t r = 0; r < echelon.size(); ++r) {
        const Elem c = v[pivots[r]];
        if (c == 0) continue;
        const auto& row = echelon[r];
        for (std::size_t j = pivots[r]; j < v.size(); ++j)
            if (row[j]) v[j] = f.sub(v[j], f.mul(c, row[j]));
    }
}

} // namespace linblock
