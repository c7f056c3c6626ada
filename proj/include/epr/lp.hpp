#pragma once
// Dense two-phase simplex for the tiny LPs used by the identification module
// (regret evaluation over a utility polytope, witness-direction searches).
// Problems here have at most ~a dozen variables, so a plain tableau with
// Bland's rule is both adequate and cycle-proof.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace epr::lp {

enum class Rel { Le, Eq, Ge };

struct Constraint {
    std::vector<double> a;
    Rel rel;
    double rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status;
    double value = 0.0;
    std::vector<double> x;
};

namespace detail {

// maximize c'x over the tableau rows; basis[i] = variable basic in row i.
// Returns false on unboundedness. noise_cap: a column with no eligible pivot
// row and reduced cost below this is treated as rounding noise (zeroed), not
// as an unbounded ray; pass +inf for problems that are bounded a priori.
// npivots (optional) reports how many pivots were taken; max_pivots lets the
// caller interleave refactorization passes.
inline bool simplex_core(std::vector<std::vector<double>>& T,
                         std::vector<std::size_t>& basis,
                         std::size_t ncols, double noise_cap,
                         std::size_t* npivots = nullptr,
                         std::size_t max_pivots = std::size_t(-1)) {
    const double eps = 1e-11;
    if (npivots) *npivots = 0;
    const std::size_t m = T.size() - 1;  // last row is the objective
    for (std::size_t iter = 0; iter < 20000; ++iter) {
        if (npivots && *npivots >= max_pivots) return true;
        // Bland: entering = lowest-index column with positive reduced cost
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (T[m][j] > eps) { enter = j; break; }
        if (enter == ncols) return true;  // optimal

        std::size_t leave = m;
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= eps) continue;
            double ratio = T[i][ncols] / T[i][enter];
            if (leave == m || ratio < best - eps ||
                (ratio < best + eps && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) {
            if (T[m][enter] < noise_cap) {
                T[m][enter] = 0.0;
                continue;
            }
            return false;  // unbounded
        }

        double piv = T[leave][enter];
        for (std::size_t j = 0; j <= ncols; ++j) T[leave][j] /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = T[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
        if (npivots) ++*npivots;
    }
    throw std::runtime_error("simplex: iteration limit");
}

// Rebuild the tableau for the given basis from the pristine row data T0
// (rows 0..m-1 with rhs in column ncols; objective row ignored).  Long
// degenerate pivot chains drift the running tableau by ~1e-6, which is fatal
// to callers comparing objective values at 1e-7; refactorizing restores
// machine-level accuracy.  Returns false if the basis is numerically singular.
inline bool refactorize(const std::vector<std::vector<double>>& T0,
                        std::vector<std::vector<double>>& T,
                        const std::vector<std::size_t>& basis,
                        const std::vector<double>& obj,
                        std::size_t ncols) {
    const std::size_t m = basis.size();
    std::vector<std::vector<double>> R(T0.begin(), T0.begin() + m);
    for (std::size_t i = 0; i < m; ++i) {
        // eliminate earlier basic columns from row i, then pivot on its own
        for (std::size_t k = 0; k < i; ++k) {
            double f = R[i][basis[k]];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) R[i][j] -= f * R[k][j];
        }
        double piv = R[i][basis[i]];
        if (std::fabs(piv) < 1e-11) return false;
        for (std::size_t j = 0; j <= ncols; ++j) R[i][j] /= piv;
        for (std::size_t k = 0; k < i; ++k) {
            double f = R[k][basis[i]];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= ncols; ++j) R[k][j] -= f * R[i][j];
        }
    }
    // a basis chosen off drifted data can be infeasible on the clean data;
    // clamp degenerate-level negatives, reject anything real
    for (std::size_t i = 0; i < m; ++i) {
        if (R[i][ncols] < -1e-7) return false;
        if (R[i][ncols] < 0.0) R[i][ncols] = 0.0;
    }
    std::vector<double> o(obj);
    o.resize(ncols + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double f = o[basis[i]];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j <= ncols; ++j) o[j] -= f * R[i][j];
    }
    for (std::size_t i = 0; i < m; ++i) T[i] = std::move(R[i]);
    T[m] = std::move(o);
    return true;
}

// simplex interleaved with refactorization: pivot in short bursts and rebuild
// the tableau from the original data in between, so every pivot decision is
// made on clean numbers and drift never steers the path.  Terminates when a
// freshly refactorized tableau is already optimal.
inline bool solve_refined(const std::vector<std::vector<double>>& T0,
                          std::vector<std::vector<double>>& T,
                          std::vector<std::size_t>& basis,
                          const std::vector<double>& obj,
                          std::size_t ncols, double noise_cap) {
    for (int round = 0; round < 2000; ++round) {
        // callers pre-set the objective row, so a failed refactorization
        // (singular or infeasible basis) just means one uncleaned burst
        bool clean = refactorize(T0, T, basis, obj, ncols);
        std::size_t piv = 0;
        if (!simplex_core(T, basis, ncols, noise_cap, &piv, 16)) return false;
        (void)clean;
        if (piv == 0) return true;
    }
    throw std::runtime_error("simplex: refinement limit");
}

}  // namespace detail

// maximize c'x  s.t. constraints, x >= 0
inline Result maximize(const std::vector<double>& c,
                       const std::vector<Constraint>& cons) {
    const std::size_t n = c.size();
    const std::size_t m = cons.size();
    for (const auto& r : cons)
        if (r.a.size() != n) throw std::invalid_argument("lp: bad row width");

    // column layout: [x (n)] [slack/surplus (<=m)] [artificial (<=m)]
    std::size_t nslack = 0, nart = 0;
    // normalize rows so rhs >= 0
    std::vector<std::vector<double>> A(m, std::vector<double>(n));
    std::vector<double> b(m);
    std::vector<Rel> rel(m);
    for (std::size_t i = 0; i < m; ++i) {
        A[i] = cons[i].a;
        b[i] = cons[i].rhs;
        rel[i] = cons[i].rel;
        if (b[i] < 0) {
            for (auto& v : A[i]) v = -v;
            b[i] = -b[i];
            if (rel[i] == Rel::Le) rel[i] = Rel::Ge;
            else if (rel[i] == Rel::Ge) rel[i] = Rel::Le;
        }
        if (rel[i] == Rel::Le) ++nslack;
        else if (rel[i] == Rel::Ge) { ++nslack; ++nart; }
        else ++nart;
    }
    const std::size_t ncols = n + nslack + nart;
    std::vector<std::vector<double>> T(m + 1, std::vector<double>(ncols + 1, 0.0));
    std::vector<std::size_t> basis(m);
    std::size_t scol = n, acol = n + nslack;
    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][ncols] = b[i];
        if (rel[i] == Rel::Le) {
            T[i][scol] = 1.0;
            basis[i] = scol++;
        } else if (rel[i] == Rel::Ge) {
            T[i][scol++] = -1.0;
            T[i][acol] = 1.0;
            basis[i] = acol++;
            art_rows.push_back(i);
        } else {
            T[i][acol] = 1.0;
            basis[i] = acol++;
            art_rows.push_back(i);
        }
    }

    // pristine copy of the constraint rows for refactorization
    std::vector<std::vector<double>> T0(T.begin(), T.begin() + m);

    if (nart > 0) {
        // phase 1: maximize -(sum of artificials)
        std::vector<double> obj1(ncols + 1, 0.0);
        for (std::size_t j = n + nslack; j < ncols; ++j) obj1[j] = -1.0;
        for (std::size_t j = 0; j <= ncols; ++j) T[m][j] = obj1[j];
        for (std::size_t i : art_rows)
            for (std::size_t j = 0; j <= ncols; ++j) T[m][j] += T[i][j];
        // phase 1's objective is bounded above by zero, so it can never be
        // genuinely unbounded; any apparent ray is tableau rounding
        if (!detail::solve_refined(T0, T, basis, obj1, ncols,
                                   std::numeric_limits<double>::infinity()))
            throw std::runtime_error("lp: phase-1 unbounded");
        if (T[m][ncols] > 1e-8) return {Status::Infeasible, 0.0, {}};
        // pivot artificials out of the basis where possible
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n + nslack) continue;
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < n + nslack; ++j)
                if (std::fabs(T[i][j]) > 1e-9) { enter = j; break; }
            if (enter == ncols) continue;  // redundant row, drop it below
            double piv = T[i][enter];
            for (std::size_t j = 0; j <= ncols; ++j) T[i][j] /= piv;
            for (std::size_t k = 0; k <= m; ++k) {
                if (k == i) continue;
                double f = T[k][enter];
                if (f == 0.0) continue;
                for (std::size_t j = 0; j <= ncols; ++j) T[k][j] -= f * T[i][j];
            }
            basis[i] = enter;
        }
        // drop redundant rows still carrying an artificial basic (their
        // original rows are linear combinations of the kept ones), then cut
        // the artificial columns off entirely
        std::vector<std::vector<double>> Tk, T0k;
        std::vector<std::size_t> bk;
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] >= n + nslack) continue;
            Tk.push_back(std::move(T[i]));
            T0k.push_back(std::move(T0[i]));
            bk.push_back(basis[i]);
        }
        Tk.push_back(std::move(T[m]));
        T = std::move(Tk);
        T0 = std::move(T0k);
        basis = std::move(bk);
        const std::size_t cut = n + nslack;
        for (auto& row : T) { row[cut] = row[ncols]; row.resize(cut + 1); }
        for (auto& row : T0) { row[cut] = row[ncols]; row.resize(cut + 1); }
    }
    const std::size_t mm = basis.size();   // rows kept
    const std::size_t nc = n + nslack;     // columns kept

    // phase 2 objective
    std::vector<double> obj2(nc + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) obj2[j] = c[j];
    for (std::size_t j = 0; j <= nc; ++j) T[mm][j] = obj2[j];
    for (std::size_t i = 0; i < mm; ++i) {
        double f = T[mm][basis[i]];
        if (f == 0.0) continue;
        for (std::size_t j = 0; j <= nc; ++j) T[mm][j] -= f * T[i][j];
    }
    if (!detail::solve_refined(T0, T, basis, obj2, nc, 1e-9))
        return {Status::Unbounded, 0.0, {}};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(n, 0.0);
    for (std::size_t i = 0; i < mm; ++i)
        if (basis[i] < n) res.x[basis[i]] = T[i][nc];
    res.value = 0.0;
    for (std::size_t j = 0; j < n; ++j) res.value += c[j] * res.x[j];
    return res;
}

}  // namespace epr::lp
