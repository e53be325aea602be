#pragma once

#include <Eigen/Dense>
#include <cstdlib>

#include "cusp/checked.hpp"

namespace cusp {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

// U * A * V = D with D diagonal, d_1 | d_2 | ..., d_i >= 0, and U, V unimodular.
struct SmithForm {
    IntMatrix U, Uinv, V, D;
    IntVector diagonal() const {
        Eigen::Index k = std::min(D.rows(), D.cols());
        IntVector d(k);
        for (Eigen::Index i = 0; i < k; ++i) d(i) = D(i, i);
        return d;
    }
};

namespace detail {

inline void add_row(IntMatrix& M, Eigen::Index dst, Eigen::Index src, long long k) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) M(dst, c) = checked_add(M(dst, c), checked_mul(k, M(src, c)));
}

inline void add_col(IntMatrix& M, Eigen::Index dst, Eigen::Index src, long long k) {
    for (Eigen::Index r = 0; r < M.rows(); ++r) M(r, dst) = checked_add(M(r, dst), checked_mul(k, M(r, src)));
}

}  // namespace detail

template <typename Derived>
SmithForm smith_normal_form(const Eigen::MatrixBase<Derived>& A) {
    using detail::add_col;
    using detail::add_row;
    SmithForm s;
    s.D = A.template cast<long long>();
    const Eigen::Index m = s.D.rows(), n = s.D.cols();
    s.U = IntMatrix::Identity(m, m);
    s.Uinv = IntMatrix::Identity(m, m);
    s.V = IntMatrix::Identity(n, n);
    IntMatrix& D = s.D;

    auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        D.row(i).swap(D.row(j));
        s.U.row(i).swap(s.U.row(j));
        s.Uinv.col(i).swap(s.Uinv.col(j));
    };
    auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        D.col(i).swap(D.col(j));
        s.V.col(i).swap(s.V.col(j));
    };
    auto row_op = [&](Eigen::Index dst, Eigen::Index src, long long k) {
        add_row(D, dst, src, k);
        add_row(s.U, dst, src, k);
        add_col(s.Uinv, src, dst, -k);
    };
    auto col_op = [&](Eigen::Index dst, Eigen::Index src, long long k) {
        add_col(D, dst, src, k);
        add_col(s.V, dst, src, k);
    };

    for (Eigen::Index t = 0; t < std::min(m, n); ++t) {
        while (true) {
            Eigen::Index pr = -1, pc = -1;
            long long best = 0;
            for (Eigen::Index i = t; i < m; ++i)
                for (Eigen::Index j = t; j < n; ++j)
                    if (D(i, j) != 0 && (best == 0 || std::llabs(D(i, j)) < best)) {
                        best = std::llabs(D(i, j));
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) return s;
            swap_rows(t, pr);
            swap_cols(t, pc);
            bool clean = true;
            for (Eigen::Index i = t + 1; i < m; ++i) {
                long long q = D(i, t) / D(t, t);
                if (q != 0) row_op(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (Eigen::Index j = t + 1; j < n; ++j) {
                long long q = D(t, j) / D(t, t);
                if (q != 0) col_op(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < m && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_op(t, bad, 1);
        }
        if (D(t, t) < 0) {
            D.row(t) *= -1;
            s.U.row(t) *= -1;
            s.Uinv.col(t) *= -1;
        }
    }
    return s;
}

}  // namespace cusp
