#include "grm/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace grm {

namespace {

// row_dst += coeff * row_src
void addmul_row(u8* dst, const u8* src, u8 coeff, std::size_t n, const SubfieldCtx& F) {
    if (coeff == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
        if (src[i] != 0) dst[i] = F.add(dst[i], F.mul(coeff, src[i]));
    }
}

void scale_row(u8* r, u8 coeff, std::size_t n, const SubfieldCtx& F) {
    for (std::size_t i = 0; i < n; ++i)
        if (r[i] != 0) r[i] = F.mul(r[i], coeff);
}

}  // namespace

std::size_t rref(Mat& M, const SubfieldCtx& F, std::vector<u32>* pivots) {
    std::size_t lead = 0;
    for (std::size_t col = 0; col < M.cols && lead < M.rows; ++col) {
        std::size_t pivot = lead;
        while (pivot < M.rows && M.at(pivot, col) == 0) ++pivot;
        if (pivot == M.rows) continue;
        if (pivot != lead)
            std::swap_ranges(M.row(pivot), M.row(pivot) + M.cols, M.row(lead));
        u8 inv = F.inv(M.at(lead, col));
        scale_row(M.row(lead), inv, M.cols, F);
        for (std::size_t r = 0; r < M.rows; ++r) {
            if (r == lead) continue;
            u8 c = M.at(r, col);
            if (c != 0) addmul_row(M.row(r), M.row(lead), F.neg(c), M.cols, F);
        }
        if (pivots) pivots->push_back(static_cast<u32>(col));
        ++lead;
    }
    return lead;
}

std::size_t rank(Mat M, const SubfieldCtx& F) { return rref(M, F); }

Mat restrict_columns(const Mat& M, std::span<const u32> cols) {
    Mat R(M.rows, cols.size());
    for (std::size_t r = 0; r < M.rows; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) R.at(r, j) = M.at(r, cols[j]);
    return R;
}

std::size_t rank_of_columns(const Mat& M, const SubfieldCtx& F, std::span<const u32> cols) {
    Mat R = restrict_columns(M, cols);
    return rref(R, F);
}

Mat kernel_basis(const Mat& M, const SubfieldCtx& F) {
    Mat R = M;
    std::vector<u32> pivots;
    std::size_t rk = rref(R, F, &pivots);
    std::vector<bool> is_pivot(M.cols, false);
    for (u32 p : pivots) is_pivot[p] = true;

    Mat K(M.cols - rk, M.cols);
    std::size_t out = 0;
    for (std::size_t free_col = 0; free_col < M.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        K.at(out, free_col) = 1;
        for (std::size_t r = 0; r < rk; ++r) {
            u8 v = R.at(r, free_col);
            if (v != 0) K.at(out, pivots[r]) = F.neg(v);
        }
        ++out;
    }
    return K;
}

bool row_spaces_equal(Mat A, Mat B, const SubfieldCtx& F) {
    std::size_t ra = rref(A, F);
    std::size_t rb = rref(B, F);
    if (ra != rb || A.cols != B.cols) return false;
    // both in canonical RREF: equal spaces iff identical nonzero rows
    for (std::size_t r = 0; r < ra; ++r)
        if (!std::equal(A.row(r), A.row(r) + A.cols, B.row(r))) return false;
    return true;
}

std::vector<u8> vec_mat_mul(std::span<const u8> msg, const Mat& M, const SubfieldCtx& F) {
    if (msg.size() != M.rows) throw std::invalid_argument("vec_mat_mul: size mismatch");
    std::vector<u8> out(M.cols, 0);
    for (std::size_t r = 0; r < M.rows; ++r) {
        if (msg[r] != 0) addmul_row(out.data(), M.row(r), msg[r], M.cols, F);
    }
    return out;
}

bool pivot_on_columns(Mat& M, std::span<const u32> cols, const SubfieldCtx& F) {
    std::size_t lead = 0;
    for (u32 col : cols) {
        std::size_t pivot = lead;
        while (pivot < M.rows && M.at(pivot, col) == 0) ++pivot;
        if (pivot == M.rows) return false;
        if (pivot != lead) std::swap_ranges(M.row(pivot), M.row(pivot) + M.cols, M.row(lead));
        scale_row(M.row(lead), F.inv(M.at(lead, col)), M.cols, F);
        for (std::size_t r = 0; r < M.rows; ++r) {
            if (r == lead) continue;
            u8 c = M.at(r, col);
            if (c != 0) addmul_row(M.row(r), M.row(lead), F.neg(c), M.cols, F);
        }
        ++lead;
    }
    return true;
}

bool RowSpaceAccumulator::add_row(std::span<const u8> row) {
    if (row.size() != cols_) throw std::invalid_argument("RowSpaceAccumulator: bad row length");
    std::vector<u8> v(row.begin(), row.end());
    const SubfieldCtx& F = *field_;
    // reduce against existing pivots
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u8 c = v[pivots_[i]];
        if (c != 0) addmul_row(v.data(), rows_[i].data(), F.neg(c), cols_, F);
    }
    std::size_t pc = 0;
    while (pc < cols_ && v[pc] == 0) ++pc;
    if (pc == cols_) return false;
    scale_row(v.data(), F.inv(v[pc]), cols_, F);
    // clear the new pivot column from existing rows to stay fully reduced
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        u8 c = rows_[i][pc];
        if (c != 0) addmul_row(rows_[i].data(), v.data(), F.neg(c), cols_, F);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), static_cast<u32>(pc));
    std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
    pivots_.insert(pos, static_cast<u32>(pc));
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

Mat RowSpaceAccumulator::to_matrix() const {
    Mat M(rows_.size(), cols_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        std::copy(rows_[r].begin(), rows_[r].end(), M.row(r));
    return M;
}

}  // namespace grm
