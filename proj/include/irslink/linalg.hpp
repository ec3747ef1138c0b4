// irslink - link-level Monte Carlo simulator for IRS-aided multi-user MIMO downlink
// Copyright (C) 2026 the irslink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSLINK_LINALG_HPP
#define IRSLINK_LINALG_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace irslink {

using cxd = std::complex<double>;
using cvec = std::vector<cxd>;

// Dense row-major complex matrix. Rows are contiguous, so channel rows
// h_n^T can be handed out as spans without copying.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cxd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cxd& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cxd> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cxd> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    friend bool operator==(const CMatrix& a, const CMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    cvec data_;
};

inline double sum_abs2(std::span<const cxd> v)
{
    double s = 0.0;
    for (const cxd& x : v)
        s += std::norm(x);
    return s;
}

inline double vec_norm(std::span<const cxd> v) { return std::sqrt(sum_abs2(v)); }

// Unconjugated product sum: a row vector applied to a column vector.
inline cxd dot_u(std::span<const cxd> a, std::span<const cxd> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot_u: length mismatch");
    cxd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// y = H w for row-major H (rows x cols), w of length cols.
inline cvec mat_vec(const CMatrix& H, std::span<const cxd> w)
{
    if (w.size() != H.cols())
        throw std::invalid_argument("mat_vec: dimension mismatch");
    cvec y(H.rows());
    for (std::size_t r = 0; r < H.rows(); ++r)
        y[r] = dot_u(H.row(r), w);
    return y;
}

} // namespace irslink

#endif
