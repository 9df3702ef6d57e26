#include "ctt/tt_round.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#ifdef CTT_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace ctt {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ThinSvd {
    MatrixXd U;  // m x r
    VectorXd S;  // r, descending
    MatrixXd Vt; // r x n
};

// Thin SVD; dgesdd when LAPACK is linked (much faster on the large
// unfoldings of the untruncated integer tensors), Eigen's divide and
// conquer otherwise.
ThinSvd svd_thin(MatrixXd M) {
    const auto m = int(M.rows());
    const auto n = int(M.cols());
    const int r = std::min(m, n);
#ifdef CTT_HAVE_LAPACKE
    ThinSvd out;
    out.U.resize(m, r);
    out.S.resize(r);
    out.Vt.resize(r, n);
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, M.data(), m,
                                           out.S.data(), out.U.data(), m, out.Vt.data(), r);
    if (info == 0) return out;
    // dgesdd occasionally fails to converge; fall through to Eigen.
#endif
    Eigen::BDCSVD<MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ThinSvd out2;
    out2.U = svd.matrixU();
    out2.S = svd.singularValues();
    out2.Vt = svd.matrixV().transpose();
    return out2;
}

// Number of singular values to keep. eps = 0 keeps everything above
// 1e-13 of the unfolding's largest value; otherwise the largest tail
// with squared sum at most (eps |T|_F / sqrt(d-1))^2 is dropped.
int truncation_rank(const VectorXd& S, double eps, double norm_T, int d) {
    const int n = int(S.size());
    if (n == 0) return 0;
    if (eps == 0.0) {
        const double cut = 1e-13 * S(0);
        int r = 0;
        while (r < n && S(r) > cut && S(r) > 0.0) ++r;
        return r;
    }
    const double budget = std::pow(eps * norm_T / std::sqrt(double(std::max(d - 1, 1))), 2);
    double tail = 0.0;
    int r = n;
    while (r > 0) {
        const double next = tail + S(r - 1) * S(r - 1);
        if (next > budget) break;
        tail = next;
        --r;
    }
    return r;
}

MatrixXd unfold_right(const Core& c) {
    // rows: left rank, cols: slice-major (i, y).
    MatrixXd M(c.r_left, c.n * c.r_right);
    for (int x = 0; x < c.r_left; ++x)
        for (int i = 0; i < c.n; ++i)
            for (int y = 0; y < c.r_right; ++y) M(x, i * c.r_right + y) = c.at(x, i, y);
    return M;
}

Core fold_right(const MatrixXd& M, int n, int r_right) {
    Core c;
    c.r_left = int(M.rows());
    c.n = n;
    c.r_right = r_right;
    DenseCore d;
    d.values.assign(std::size_t(c.r_left) * n * r_right, 0.0);
    for (int x = 0; x < c.r_left; ++x)
        for (int i = 0; i < n; ++i)
            for (int y = 0; y < r_right; ++y)
                d.values[(std::size_t(x) * n + i) * r_right + y] = M(x, i * r_right + y);
    c.data = std::move(d);
    return c;
}

// Dense core times carry on the right: G'(x,i,:) = G(x,i,:) * B.
Core absorb_carry(const Core& c, const MatrixXd& B) {
    Core out;
    out.r_left = c.r_left;
    out.n = c.n;
    out.r_right = int(B.cols());
    DenseCore d;
    d.values.assign(std::size_t(out.r_left) * out.n * out.r_right, 0.0);
    if (c.is_sparse() && c.sparse().kind == SparseCore::Kind::RowSelect) {
        const SparseCore& s = c.sparse();
        for (int i = 0; i < c.n; ++i)
            for (int x = 0; x < c.r_left; ++x) {
                const int m = s.sel[std::size_t(i)][std::size_t(x)];
                if (m < 0) continue;
                for (int y = 0; y < out.r_right; ++y)
                    d.values[(std::size_t(x) * c.n + i) * out.r_right + y] = B(m, y);
            }
    } else {
        for (int i = 0; i < c.n; ++i)
            for (int x = 0; x < c.r_left; ++x)
                for (int m = 0; m < c.r_right; ++m) {
                    const double g = c.at(x, i, m);
                    if (g == 0.0) continue;
                    for (int y = 0; y < out.r_right; ++y)
                        d.values[(std::size_t(x) * c.n + i) * out.r_right + y] += g * B(m, y);
                }
    }
    out.data = std::move(d);
    return out;
}

TtTensor sweep_right_to_left(std::vector<Core> cores, int middle, double eps,
                             const std::vector<std::vector<double>>* lambda) {
    const int d = int(cores.size());
    double norm_T = 0.0;
    for (int k = d; k >= 2; --k) {
        Core& c = cores[std::size_t(k) - 1];
        MatrixXd M = unfold_right(c);
        MatrixXd A = M;
        if (lambda) {
            const auto& lam = (*lambda)[std::size_t(k) - 1];
            for (int x = 0; x < int(M.rows()); ++x) A.row(x) *= std::sqrt(lam[std::size_t(x)]);
        }
        if (k == d) norm_T = A.norm();
        ThinSvd svd = svd_thin(std::move(A));
        const int r = truncation_rank(svd.S, eps, norm_T, d);
        MatrixXd B; // carry into core k-1, rows r_{k-1}
        MatrixXd Vt;
        if (r == 0) {
            B = MatrixXd::Zero(M.rows(), 1);
            Vt = MatrixXd::Zero(1, M.cols());
        } else {
            Vt = svd.Vt.topRows(r);
            B = svd.U.leftCols(r) * svd.S.head(r).asDiagonal();
            if (lambda) {
                const auto& lam = (*lambda)[std::size_t(k) - 1];
                for (int x = 0; x < int(B.rows()); ++x) {
                    const double l = lam[std::size_t(x)];
                    // States no left path reaches contribute nothing; their
                    // rescaled rows are exactly zero.
                    if (l == 0.0)
                        B.row(x).setZero();
                    else
                        B.row(x) /= std::sqrt(l);
                }
            }
        }
        cores[std::size_t(k) - 1] = fold_right(Vt, c.n, c.r_right);
        cores[std::size_t(k) - 2] = absorb_carry(cores[std::size_t(k) - 2], B);
    }
    return TtTensor(std::move(cores), middle);
}

} // namespace

std::vector<std::vector<double>> path_counts(const TtTensor& t) {
    if (!t.left_chain_form())
        throw std::invalid_argument("path_counts: tensor is not in construction layout");
    std::vector<std::vector<double>> lambda(std::size_t(t.dims()));
    lambda[0] = {1.0};
    for (int k = 1; k < t.dims(); ++k) {
        const Core& c = t.core(k);
        const SparseCore& s = c.sparse();
        std::vector<double> next(std::size_t(c.r_right), 0.0);
        for (int i = 0; i < c.n; ++i)
            for (int x = 0; x < c.r_left; ++x) {
                const int y = s.sel[std::size_t(i)][std::size_t(x)];
                if (y >= 0) next[std::size_t(y)] += lambda[std::size_t(k) - 1][std::size_t(x)];
            }
        lambda[std::size_t(k)] = std::move(next);
    }
    return lambda;
}

TtTensor tt_round(const TtTensor& t, double eps) {
    if (eps < 0) throw std::invalid_argument("tt_round: eps must be nonnegative");
    bool any_factor = false;
    for (int k = 1; k <= t.dims(); ++k) any_factor |= t.has_factor(k);
    if (any_factor) return tt_round(apply_factors(t), eps);

    if (t.dims() == 1) {
        Core c = t.core(1);
        Core out;
        out.r_left = out.r_right = 1;
        out.n = c.n;
        DenseCore d;
        d.values = c.to_dense();
        out.data = std::move(d);
        std::vector<Core> cores{std::move(out)};
        return TtTensor(std::move(cores), 1);
    }

    if (t.left_chain_form()) {
        // Construction layout: partial left products already have diagonal
        // Gram matrices (the integer path counts), so each unfolding is
        // row-rescaled instead of re-orthogonalized.
        const auto lambda = path_counts(t);
        return sweep_right_to_left(t.cores(), t.middle(), eps, &lambda);
    }

    // General layout: make everything dense, left-orthogonalize by QR,
    // then run the same truncation sweep without weights.
    std::vector<Core> cores;
    for (int k = 1; k <= t.dims(); ++k) {
        Core c;
        c.r_left = t.core(k).r_left;
        c.n = t.core(k).n;
        c.r_right = t.core(k).r_right;
        DenseCore d;
        d.values = t.core(k).to_dense();
        c.data = std::move(d);
        cores.push_back(std::move(c));
    }
    for (int k = 1; k < int(cores.size()); ++k) {
        Core& c = cores[std::size_t(k) - 1];
        MatrixXd M(c.r_left * c.n, c.r_right);
        for (int x = 0; x < c.r_left; ++x)
            for (int i = 0; i < c.n; ++i)
                for (int y = 0; y < c.r_right; ++y)
                    M(x * c.n + i, y) = c.dense().values[(std::size_t(x) * c.n + i) * c.r_right + y];
        Eigen::HouseholderQR<MatrixXd> qr(M);
        const int q = int(std::min(M.rows(), M.cols()));
        MatrixXd Q = qr.householderQ() * MatrixXd::Identity(M.rows(), q);
        MatrixXd R = qr.matrixQR().topRows(q).triangularView<Eigen::Upper>();
        // Rewrite core k as the orthonormal part.
        Core nq;
        nq.r_left = c.r_left;
        nq.n = c.n;
        nq.r_right = q;
        DenseCore dq;
        dq.values.assign(std::size_t(nq.r_left) * nq.n * q, 0.0);
        for (int x = 0; x < nq.r_left; ++x)
            for (int i = 0; i < nq.n; ++i)
                for (int y = 0; y < q; ++y) dq.values[(std::size_t(x) * nq.n + i) * q + y] = Q(x * nq.n + i, y);
        nq.data = std::move(dq);
        cores[std::size_t(k) - 1] = std::move(nq);
        // Push R into core k+1 from the left.
        Core& nx = cores[std::size_t(k)];
        Core folded;
        folded.r_left = q;
        folded.n = nx.n;
        folded.r_right = nx.r_right;
        DenseCore df;
        df.values.assign(std::size_t(q) * nx.n * nx.r_right, 0.0);
        for (int x = 0; x < q; ++x)
            for (int m = 0; m < nx.r_left; ++m) {
                const double rv = R(x, m);
                if (rv == 0.0) continue;
                for (int i = 0; i < nx.n; ++i)
                    for (int y = 0; y < nx.r_right; ++y)
                        df.values[(std::size_t(x) * nx.n + i) * nx.r_right + y] +=
                            rv * nx.dense().values[(std::size_t(m) * nx.n + i) * nx.r_right + y];
            }
        folded.data = std::move(df);
        cores[std::size_t(k)] = std::move(folded);
    }
    return sweep_right_to_left(std::move(cores), t.middle(), eps, nullptr);
}

} // namespace ctt
