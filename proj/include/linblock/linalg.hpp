#pragma once

#include <span>
#include <vector>

#include "linblock/finite_field.hpp"

namespace linblock {

using Matrix = std::vector<Vec>;

/// Row-reduces m in place to reduced row echelon form, drops zero rows and
/// returns the rank. All rows must have length ncols.
std::size_t rref(const Field& f, Matrix& m, std::size_t ncols);

/// Pivot column of each row of a matrix already in reduced echelon form.
std::vector<std::size_t> pivot_columns(const Matrix& echelon);

/// Basis (in reduced echelon form) of {x : r . x = 0 for every row r}.
Matrix null_space(const Field& f, Matrix rows, std::size_t ncols);

inline Elem dot(const Field& f, std::span<const Elem> a, std::span<const Elem> b) {
    Elem s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i]) s = f.add(s, f.mul(a[i], b[i]));
    return s;
}

/// Reduces v against an echelon basis; the result is zero iff v lies in its span.
void reduce_against(const Field& f, const Matrix& echelon, const std::vector<std::size_t>& pivots,
                    std::span<Elem> v);

} // namespace linblock
