#include "epr/identification.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>

#include "epr/lp.hpp"

namespace epr::ident {
namespace {

constexpr double kChoiceTol = 1e-9;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec diff(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

void axpy(Vec& y, double c, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * x[i];
}

Vec scaled(const Vec& a, double c) {
    Vec r(a);
    for (auto& v : r) v *= c;
    return r;
}

Vec unit2(const Vec& v) {
    double n = nrm(v);
    if (n < 1e-14) return {};
    return scaled(v, 1.0 / n);
}

double max_abs(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

Vec center(const Vec& v) {
    double mu = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    Vec r(v);
    for (auto& x : r) x -= mu;
    return r;
}

Vec block_center_(const OutcomeSpace& sp, const Vec& v) {
    Vec r(v);
    for (std::size_t b = 0; b < sp.blocks(); ++b) {
        double mu = 0.0;
        for (std::size_t z = sp.offset[b]; z < sp.offset[b + 1]; ++z) mu += v[z];
        mu /= double(sp.offset[b + 1] - sp.offset[b]);
        for (std::size_t z = sp.offset[b]; z < sp.offset[b + 1]; ++z) r[z] -= mu;
    }
    return r;
}

double real_angle(const Vec& a, const Vec& b) {
    double c = dot(a, b) / std::max(nrm(a) * nrm(b), 1e-300);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// square solve with partial pivoting; false if singular
bool gauss_solve(std::vector<Vec> A, Vec b, Vec& out) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
        if (std::fabs(A[piv][c]) < 1e-12) return false;
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
            b[r] -= f * b[c];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out[i] = b[i] / A[i][i];
    return true;
}

// min ||sum_k x_k cols[k] - b||; returns coefficients, residual in *resid
Vec lstsq_cols(const std::vector<Vec>& cols, const Vec& b, double* resid) {
    const std::size_t k = cols.size();
    std::vector<Vec> G(k, Vec(k));
    Vec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = dot(cols[i], b);
        for (std::size_t j = 0; j < k; ++j) G[i][j] = dot(cols[i], cols[j]);
    }
    Vec x;
    if (!gauss_solve(G, rhs, x)) {
        if (resid) *resid = std::numeric_limits<double>::infinity();
        return {};
    }
    if (resid) {
        Vec r(b);
        for (std::size_t i = 0; i < k; ++i) axpy(r, -x[i], cols[i]);
        *resid = nrm(r);
    }
    return x;
}

// unit vector spanning the null space of the given rows; {} unless dim is 1
Vec nullspace_unit(std::vector<Vec> rows, std::size_t n) {
    const std::size_t m = rows.size();
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t piv = r;
        for (std::size_t i = r + 1; i < m; ++i)
            if (std::fabs(rows[i][c]) > std::fabs(rows[piv][c])) piv = i;
        if (std::fabs(rows[piv][c]) < 1e-10) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            double f = rows[i][c] / rows[r][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    if (r + 1 != n) return {};  // null dimension != 1
    std::vector<bool> is_piv(n, false);
    for (std::size_t c : pivcol) is_piv[c] = true;
    std::size_t free_c = 0;
    while (is_piv[free_c]) ++free_c;
    Vec x(n, 0.0);
    x[free_c] = 1.0;
    for (std::size_t i = 0; i < r; ++i)
        x[pivcol[i]] = -rows[i][free_c] / rows[i][pivcol[i]];
    return unit2(x);
}

// Jacobi sweeps; returns eigenvector of the smallest eigenvalue
Vec smallest_eigvec(std::vector<Vec> M) {
    const std::size_t n = M.size();
    std::vector<Vec> V(n, Vec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) V[i][i] = 1.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += M[p][q] * M[p][q];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(M[p][q]) < 1e-15) continue;
                double theta = 0.5 * std::atan2(2.0 * M[p][q], M[q][q] - M[p][p]);
                double c = std::cos(theta), s = std::sin(theta);
                for (std::size_t k = 0; k < n; ++k) {
                    double mp = M[p][k], mq = M[q][k];
                    M[p][k] = c * mp - s * mq;
                    M[q][k] = s * mp + c * mq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double mp = M[k][p], mq = M[k][q];
                    M[k][p] = c * mp - s * mq;
                    M[k][q] = s * mp + c * mq;
                    double vp = V[k][p], vq = V[k][q];
                    V[k][p] = c * vp - s * vq;
                    V[k][q] = s * vp + c * vq;
                }
            }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (M[i][i] < M[best][best]) best = i;
    Vec out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = V[k][best];
    return out;
}

// distance from target to conv{pts}; exact via support enumeration
double hull_distance(const std::vector<Vec>& pts, const Vec& target,
                     Vec* weights) {
    const std::size_t m = pts.size();
    double best = std::numeric_limits<double>::infinity();
    Vec best_w(m, 0.0);
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::size_t(1) << j)) idx.push_back(j);
        const std::size_t k = idx.size();
        // KKT of min ||P w - t||^2 s.t. sum w = 1
        std::vector<Vec> A(k + 1, Vec(k + 1, 0.0));
        Vec b(k + 1, 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            b[i] = 2.0 * dot(pts[idx[i]], target);
            A[i][k] = 1.0;
            A[k][i] = 1.0;
            for (std::size_t j = 0; j < k; ++j)
                A[i][j] = 2.0 * dot(pts[idx[i]], pts[idx[j]]);
        }
        b[k] = 1.0;
        Vec sol;
        if (!gauss_solve(A, b, sol)) continue;
        bool ok = true;
        for (std::size_t i = 0; i < k; ++i)
            if (sol[i] < -1e-9) { ok = false; break; }
        if (!ok) continue;
        Vec r(target);
        for (std::size_t i = 0; i < k; ++i) axpy(r, -sol[i], pts[idx[i]]);
        double d = nrm(r);
        if (d < best) {
            best = d;
            best_w.assign(m, 0.0);
            for (std::size_t i = 0; i < k; ++i) best_w[idx[i]] = std::max(sol[i], 0.0);
        }
    }
    if (weights) *weights = best_w;
    return best;
}

// distance from target to cone{pts}
double cone_distance(const std::vector<Vec>& pts, const Vec& target) {
    const std::size_t m = pts.size();
    double best = nrm(target);  // empty support
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        std::vector<Vec> cols;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (std::size_t(1) << j)) cols.push_back(pts[j]);
        double resid;
        Vec mu = lstsq_cols(cols, target, &resid);
        if (mu.empty()) continue;
        bool ok = true;
        for (double v : mu)
            if (v < -1e-9) { ok = false; break; }
        if (ok) best = std::min(best, resid);
    }
    return best;
}

// ---- direction LPs -------------------------------------------------------

struct DirSpec {
    std::size_t n = 0;
    std::vector<std::vector<std::size_t>> zero_groups;  // sum over group = 0
    std::vector<Vec> eq0;      // w . d = 0
    std::vector<Vec> le0;      // w . d <= 0
    std::vector<Vec> margins;  // w . d >= t (t maximized when objective empty)
    Vec objective;             // maximize objective . d when nonempty
};

// d represented as y - z, |d_i| <= 1; returns d normalized to max|d_i| = 1
Vec direction_lp(const DirSpec& ds, double* opt = nullptr) {
    const std::size_t n = ds.n;
    const bool tmode = ds.objective.empty();
    const std::size_t nv = 2 * n + (tmode ? 1 : 0);
    auto row_of = [&](const Vec& w) {
        Vec r(nv, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = w[i];
            r[n + i] = -w[i];
        }
        return r;
    };
    std::vector<lp::Constraint> cons;
    for (const auto& g : ds.zero_groups) {
        Vec r(nv, 0.0);
        for (std::size_t i : g) {
            r[i] = 1.0;
            r[n + i] = -1.0;
        }
        cons.push_back({r, lp::Rel::Eq, 0.0});
    }
    for (const auto& w : ds.eq0) cons.push_back({row_of(w), lp::Rel::Eq, 0.0});
    for (const auto& w : ds.le0) cons.push_back({row_of(w), lp::Rel::Le, 0.0});
    for (const auto& w : ds.margins) {
        Vec r = row_of(w);
        r[2 * n] = -1.0;
        cons.push_back({r, lp::Rel::Ge, 0.0});
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vec r(nv, 0.0);
        r[i] = 1.0;
        r[n + i] = 1.0;
        cons.push_back({r, lp::Rel::Le, 1.0});
    }
    Vec c(nv, 0.0);
    if (tmode)
        c[2 * n] = 1.0;
    else {
        Vec r = row_of(ds.objective);
        for (std::size_t i = 0; i < nv; ++i) c[i] = r[i];
    }
    auto res = lp::maximize(c, cons);
    if (opt) *opt = res.value;
    if (res.status != lp::Status::Optimal || res.value <= 1e-9) return {};
    Vec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = res.x[i] - res.x[n + i];
    double ma = max_abs(d);
    if (ma < 1e-12) return {};
    for (auto& v : d) v /= ma;
    return d;
}

// ---- randomness ----------------------------------------------------------

std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed * 0x9e3779b97f4a7c15ull + 0xa5a5ull);
}

Vec random_interior_lottery(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> U(1e-12, 1.0);
    Vec q(n);
    double s = 0.0;
    for (auto& x : q) {
        x = -std::log(U(rng));
        s += x;
    }
    for (auto& x : q) x = 0.85 * x / s + 0.15 / double(n);
    return q;
}

// gaussian direction projected orthogonal to the (orthonormal) rows
Vec random_dir(std::mt19937_64& rng, std::size_t n, const std::vector<Vec>& rows) {
    std::normal_distribution<double> N(0.0, 1.0);
    for (int tries = 0; tries < 64; ++tries) {
        Vec d(n);
        for (auto& x : d) x = N(rng);
        for (const auto& r : rows) axpy(d, -dot(d, r), r);
        Vec u = unit2(d);
        if (!u.empty()) return u;
    }
    throw std::runtime_error("random_dir: degenerate subspace");
}

std::vector<Vec> orthonormalize(std::vector<Vec> rows) {
    std::vector<Vec> out;
    for (auto& r : rows) {
        for (const auto& o : out) axpy(r, -dot(r, o), o);
        Vec u = unit2(r);
        if (!u.empty()) out.push_back(u);
    }
    return out;
}

std::vector<Vec> ones_row(std::size_t n) {
    return {Vec(n, 1.0 / std::sqrt(double(n)))};
}

std::vector<Vec> block_rows(const OutcomeSpace& sp) {
    std::vector<Vec> rows;
    for (std::size_t b = 0; b < sp.blocks(); ++b) {
        Vec r(sp.size(), 0.0);
        double w = 1.0 / std::sqrt(double(sp.offset[b + 1] - sp.offset[b]));
        for (std::size_t z = sp.offset[b]; z < sp.offset[b + 1]; ++z) r[z] = w;
        rows.push_back(r);
    }
    return rows;
}

// per-block Helmert basis of the marginal-tangent subspace
std::vector<Vec> marginal_tangent_basis(const OutcomeSpace& sp) {
    std::vector<Vec> basis;
    for (std::size_t b = 0; b < sp.blocks(); ++b) {
        std::size_t lo = sp.offset[b], hi = sp.offset[b + 1];
        for (std::size_t i = 1; i < hi - lo; ++i) {
            Vec h(sp.size(), 0.0);
            double s = 1.0 / std::sqrt(double(i * (i + 1)));
            for (std::size_t j = 0; j < i; ++j) h[lo + j] = s;
            h[lo + i] = -double(i) * s;
            basis.push_back(h);
        }
    }
    return basis;
}

double min_coord(const Vec& a) {
    return *std::min_element(a.begin(), a.end());
}

bool contains(const std::vector<std::size_t>& v, std::size_t x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

// ---- outcome space & lotteries -------------------------------------------

void OutcomeSpace::finalize() {
    if (z1.empty() || z2.size() != z1.size())
        throw std::invalid_argument("outcome space: malformed blocks");
    offset.assign(1, 0);
    for (const auto& blk : z2) {
        if (blk.empty()) throw std::invalid_argument("outcome space: empty block");
        offset.push_back(offset.back() + blk.size());
    }
}

std::size_t OutcomeSpace::block_of(std::size_t z) const {
    for (std::size_t b = 0; b < blocks(); ++b)
        if (z < offset[b + 1]) return b;
    throw std::out_of_range("outcome index");
}

OutcomeSpace OutcomeSpace::two_by_two() {
    OutcomeSpace sp;
    sp.z1 = {"0", "1"};
    sp.z2 = {{"0", "1"}, {"0", "1"}};
    sp.finalize();
    return sp;
}

void validate_lottery(const Vec& a) {
    if (a.empty()) throw std::invalid_argument("empty lottery");
    double s = 0.0;
    for (double x : a) {
        if (x < -1e-12) throw std::invalid_argument("negative lottery weight");
        s += x;
    }
    if (std::fabs(s - 1.0) > 1e-9)
        throw std::invalid_argument("lottery does not sum to one");
}

Vec marginal(const OutcomeSpace& sp, const Vec& a) {
    Vec m(sp.blocks(), 0.0);
    for (std::size_t b = 0; b < sp.blocks(); ++b)
        for (std::size_t z = sp.offset[b]; z < sp.offset[b + 1]; ++z) m[b] += a[z];
    return m;
}

// ---- regular representation ----------------------------------------------

void RegularRepresentation::validate() const {
    if (space.offset.size() != space.z1.size() + 1 || space.z1.empty())
        throw std::invalid_argument("representation: space not finalized");
    const std::size_t n = space.size();
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("representation: gamma outside (0,1)");
    if (u.size() != n) throw std::invalid_argument("representation: bad u width");
    if (extremes.size() < 2)
        throw std::invalid_argument("representation: singleton rationale set");
    for (const auto& v : extremes)
        if (v.size() != n) throw std::invalid_argument("representation: bad extreme width");

    // u strictly inside the hull: maximize the smallest hull weight
    const std::size_t m = extremes.size();
    std::vector<lp::Constraint> cons;
    for (std::size_t z = 0; z < n; ++z) {
        Vec lo(m + 1, 0.0), hi(m + 1, 0.0);
        for (std::size_t j = 0; j < m; ++j) lo[j] = hi[j] = extremes[j][z];
        cons.push_back({hi, lp::Rel::Le, u[z] + 1e-9});
        cons.push_back({lo, lp::Rel::Ge, u[z] - 1e-9});
    }
    Vec ones(m + 1, 1.0);
    ones[m] = 0.0;
    cons.push_back({ones, lp::Rel::Eq, 1.0});
    for (std::size_t j = 0; j < m; ++j) {
        Vec r(m + 1, 0.0);
        r[j] = 1.0;
        r[m] = -1.0;
        cons.push_back({r, lp::Rel::Ge, 0.0});
    }
    Vec c(m + 1, 0.0);
    c[m] = 1.0;
    auto res = lp::maximize(c, cons);
    if (res.status != lp::Status::Optimal || res.value <= 1e-6)
        throw std::invalid_argument("representation: u not in relative interior");

    // no free distortion: no pair related by scaling + per-block constants
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) {
            if (j == k) continue;
            std::vector<Vec> cols{extremes[j]};
            for (std::size_t b = 0; b < space.blocks(); ++b) {
                Vec ind(n, 0.0);
                for (std::size_t z = space.offset[b]; z < space.offset[b + 1]; ++z)
                    ind[z] = 1.0;
                cols.push_back(ind);
            }
            double resid;
            Vec fit = lstsq_cols(cols, extremes[k], &resid);
            if (!fit.empty() && fit[0] > 1e-12 && resid <= 1e-9)
                throw std::invalid_argument("representation: free distortion pair");
        }
}

RegularRepresentation RegularRepresentation::id_small_1() {
    RegularRepresentation rep;
    rep.space = OutcomeSpace::two_by_two();
    rep.gamma = 0.5;
    rep.u = {0.0, 1.0, 0.5, 1.0};
    rep.extremes = {{0.0, 1.0, 0.0, 2.0}, {0.0, 1.0, 1.0, 0.0}};
    rep.validate();
    return rep;
}

// ---- oracle ---------------------------------------------------------------

double regret_value(const RegularRepresentation& rep, const Vec& a,
                    const std::vector<Vec>& A1) {
    if (A1.empty()) throw std::domain_error("regret_value: empty foregone menu");
    validate_lottery(a);
    const std::size_t m = rep.extremes.size();
    // maximize min_b r_b.w over the weight simplex, r_b[j] = v_j.(a - b).
    // The probes compare these values at 1e-9 margins on menus whose rows can
    // differ by ~1e-6, which a floating-point simplex cannot deliver (tiny
    // pivots amplify roundoff past the margin).  The problem is tiny, so
    // enumerate vertices directly: pick tied rows S and a support T with
    // |S| = |T|, solve the equality system, keep the best feasible value.
    const std::size_t B = A1.size();
    std::vector<Vec> r(B, Vec(m));
    for (std::size_t b = 0; b < B; ++b)
        for (std::size_t j = 0; j < m; ++j)
            r[b][j] = dot(rep.extremes[j], a) - dot(rep.extremes[j], A1[b]);

    auto eval = [&](const Vec& w) {
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < B; ++b) mn = std::min(mn, dot(r[b], w));
        return mn;
    };

    double best = -std::numeric_limits<double>::infinity();
    // support-1 vertices double as the fallback so best is always attained
    Vec w(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        w.assign(m, 0.0);
        w[j] = 1.0;
        best = std::max(best, eval(w));
    }
    if (m == 1) return best;

    std::vector<std::size_t> S, T;
    for (std::size_t k = 2; k <= m; ++k) {
        // iterate k-subsets T of weights and k-1..k? rows tied: with support
        // size k the vertex ties k rows (plus the simplex equality)
        std::vector<bool> selT(m, false);
        std::fill(selT.end() - int(k), selT.end(), true);
        do {
            T.clear();
            for (std::size_t j = 0; j < m; ++j)
                if (selT[j]) T.push_back(j);
            if (k > B) continue;
            std::vector<bool> selS(B, false);
            std::fill(selS.end() - int(k), selS.end(), true);
            do {
                S.clear();
                for (std::size_t b = 0; b < B; ++b)
                    if (selS[b]) S.push_back(b);
                // unknowns: w_T, t ; equations: r_s.w = t for s in S, sum w = 1
                std::vector<Vec> A(k + 1, Vec(k + 1, 0.0));
                Vec rhs(k + 1, 0.0);
                for (std::size_t s = 0; s < k; ++s) {
                    for (std::size_t j = 0; j < k; ++j) A[s][j] = r[S[s]][T[j]];
                    A[s][k] = -1.0;
                }
                for (std::size_t j = 0; j < k; ++j) A[k][j] = 1.0;
                rhs[k] = 1.0;
                Vec sol;
                if (!gauss_solve(A, rhs, sol)) continue;
                bool ok = true;
                for (std::size_t j = 0; j < k && ok; ++j)
                    if (sol[j] < -1e-10) ok = false;
                if (!ok) continue;
                double t = sol[k];
                if (t <= best) continue;
                w.assign(m, 0.0);
                for (std::size_t j = 0; j < k; ++j)
                    w[T[j]] = std::max(sol[j], 0.0);
                if (eval(w) >= t - 1e-10) best = std::max(best, eval(w));
            } while (std::next_permutation(selS.begin(), selS.end()));
        } while (std::next_permutation(selT.begin(), selT.end()));
    }
    return best;
}

namespace {

std::vector<std::size_t> choice_impl(const RegularRepresentation& rep,
                                     const std::vector<Vec>& A2,
                                     const std::vector<Vec>& A1,
                                     double tie_tol = kChoiceTol) {
    if (A2.empty()) throw std::domain_error("oracle: empty choice menu");
    for (const auto& q : A2) validate_lottery(q);
    for (const auto& q : A1) validate_lottery(q);
    Vec m0 = marginal(rep.space, A2[0]);
    for (const auto& q : A2) {
        Vec mq = marginal(rep.space, q);
        for (std::size_t b = 0; b < m0.size(); ++b)
            if (std::fabs(mq[b] - m0[b]) > 1e-9)
                throw std::domain_error("oracle: choice menu marginals differ");
    }
    for (const auto& q : A2) {
        bool found = false;
        for (const auto& b : A1) {
            double d = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i)
                d = std::max(d, std::fabs(q[i] - b[i]));
            if (d <= 1e-12) { found = true; break; }
        }
        if (!found) throw std::domain_error("oracle: choice menu not inside foregone menu");
    }
    std::vector<double> vals(A2.size());
    for (std::size_t i = 0; i < A2.size(); ++i)
        vals[i] = (1.0 - rep.gamma) * dot(rep.u, A2[i]) +
                  rep.gamma * regret_value(rep, A2[i], A1);
    double best = *std::max_element(vals.begin(), vals.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < A2.size(); ++i)
        if (vals[i] >= best - tie_tol) out.push_back(i);
    return out;
}

}  // namespace

std::vector<std::size_t> oracle_choice(const RegularRepresentation& rep,
                                       const std::vector<Vec>& A2,
                                       const std::vector<Vec>& A1) {
    return choice_impl(rep, A2, A1);
}

ChoiceOracle::ChoiceOracle(RegularRepresentation rep, bool allow_irregular)
    : rep_(std::move(rep)) {
    if (!allow_irregular) rep_.validate();
}

std::vector<std::size_t> ChoiceOracle::choose(const std::vector<Vec>& A2,
                                              const std::vector<Vec>& A1,
                                              double tie_tol) const {
    std::vector<double> key;
    key.reserve(3 + (A2.size() + A1.size()) * rep_.space.size());
    key.push_back(tie_tol);
    key.push_back(double(A2.size()));
    for (const auto& q : A2) key.insert(key.end(), q.begin(), q.end());
    key.push_back(double(A1.size()));
    for (const auto& q : A1) key.insert(key.end(), q.begin(), q.end());
    {
        std::lock_guard<std::mutex> lk(mu_);
        ++queries_;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    auto ans = choice_impl(rep_, A2, A1, tie_tol);
    std::lock_guard<std::mutex> lk(mu_);
    memo_.emplace(std::move(key), ans);
    return ans;
}

std::size_t ChoiceOracle::query_count() const {
    std::lock_guard<std::mutex> lk(mu_);
    return queries_;
}

// ---- probes ---------------------------------------------------------------

MattersResult matters_for(const ChoiceOracle& oracle, const Vec& p, const Vec& a,
                          std::size_t search_budget, std::uint64_t seed) {
    const auto& rep = oracle.rep();
    const std::size_t n = rep.space.size();
    validate_lottery(a);
    validate_lottery(p);
    if (min_coord(a) < 1e-3)
        throw std::invalid_argument("matters_for: probe center not interior");
    Vec pa = diff(p, a);
    if (max_abs(pa) < 1e-12) return {};

    const auto& V = rep.extremes;
    const std::size_t m = V.size();
    const double amin = min_coord(a);

    std::vector<double> gaps(m);
    for (std::size_t j = 0; j < m; ++j) gaps[j] = dot(V[j], pa);
    std::size_t jstar = std::size_t(
        std::max_element(gaps.begin(), gaps.end()) - gaps.begin());

    auto try_menus = [&](const Vec& x, const Vec& b) -> bool {
        std::vector<Vec> A2{a, b};
        std::vector<Vec> base{a, b};
        if (!x.empty()) base.push_back(x);
        auto q1 = oracle.choose(A2, base);
        if (!contains(q1, 0)) return false;
        base.push_back(p);
        // exclusion needs a margin two orders above the tie band: a flip this
        // wide cannot be solver noise on a knife-edge tie, so it certifies
        // that p really moved a benchmark
        auto q2 = oracle.choose(A2, base, 1e-7);
        return !contains(q2, 0);
    };

    if (gaps[jstar] > 1e-11 && m >= 2) {
        // x: hold the offending rationale level, strictly raise every other
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        DirSpec xs;
        xs.n = n;
        xs.zero_groups = {all};
        xs.eq0 = {V[jstar]};
        for (std::size_t k = 0; k < m; ++k)
            if (k != jstar) xs.margins.push_back(V[k]);
        Vec ex = direction_lp(xs);

        std::vector<std::size_t> order;
        for (std::size_t k = 0; k < m; ++k)
            if (k != jstar) order.push_back(k);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t i, std::size_t j) { return gaps[i] < gaps[j]; });

        for (std::size_t vb : order) {
            std::vector<std::vector<std::size_t>> blocks;
            for (std::size_t b = 0; b < rep.space.blocks(); ++b) {
                std::vector<std::size_t> g;
                for (std::size_t z = rep.space.offset[b]; z < rep.space.offset[b + 1]; ++z)
                    g.push_back(z);
                blocks.push_back(g);
            }
            DirSpec bs;
            bs.n = n;
            bs.zero_groups = blocks;
            bs.eq0 = {rep.u};
            bs.le0 = {V[jstar]};
            bs.objective = V[vb];
            double gain = 0.0;
            Vec eb = direction_lp(bs, &gain);
            if (eb.empty()) continue;
            double rho = 0.45 * amin;
            Vec b(a);
            axpy(b, rho, eb);
            Vec x;
            if (!ex.empty()) {
                double vbex = dot(V[vb], ex);
                double dx = 0.45 * amin;
                if (vbex > 0.0)
                    dx = std::min(dx, 0.3 * rho * dot(V[vb], eb) / vbex);
                if (dx > 1e-13) {
                    x = a;
                    axpy(x, dx, ex);
                }
            }
            if (try_menus(x, b)) return {true, x, b};
        }
    }

    // random probes: near-indifferent b in the marginal-tangent subspace
    auto rng = make_rng(seed);
    Vec bu = block_center_(rep.space, rep.u);
    auto brows = block_rows(rep.space);
    std::uniform_real_distribution<double> U(0.2, 1.0);
    for (std::size_t k = 0; k < search_budget; ++k) {
        Vec x = random_interior_lottery(rng, n);
        Vec d = random_dir(rng, n, brows);
        double bn = nrm(bu);
        if (bn > 1e-12) axpy(d, -dot(d, bu) / (bn * bn), bu);
        double ma = max_abs(d);
        if (ma < 1e-12) continue;
        Vec b(a);
        axpy(b, U(rng) * 0.45 * amin / ma, d);
        if (try_menus(x, b)) return {true, x, b};
    }
    return {};
}

bool inner_cone_membership(const ChoiceOracle& oracle, const Vec& a, const Vec& p,
                           Mode mode, std::size_t search_budget) {
    if (mode == Mode::GroundTruth) {
        Vec ap = diff(a, p);
        for (const auto& v : oracle.rep().extremes)
            if (dot(v, ap) < -1e-12) return false;
        return true;
    }
    for (int k = 0; k <= 10; ++k) {
        double eps = std::ldexp(1.0, -k);
        Vec pe(a);
        axpy(pe, eps, diff(p, a));
        if (matters_for(oracle, pe, a, search_budget, 1009 + std::uint64_t(k)).yes)
            return false;
    }
    return true;
}

bool outer_probe(const ChoiceOracle& oracle, const Vec& a, const Vec& p,
                 Mode mode, std::size_t search_budget) {
    const auto& rep = oracle.rep();
    const std::size_t n = rep.space.size();
    validate_lottery(a);
    validate_lottery(p);
    Vec m0 = marginal(rep.space, a), m1 = marginal(rep.space, p);
    for (std::size_t b = 0; b < m0.size(); ++b)
        if (std::fabs(m0[b] - m1[b]) > 1e-9)
            throw std::domain_error("outer_probe: marginal mismatch");

    const auto& V = rep.extremes;
    const std::size_t m = V.size();
    Vec pa = diff(p, a);
    if (mode == Mode::GroundTruth) {
        for (const auto& v : V) {
            Vec blend(rep.u.size());
            for (std::size_t i = 0; i < blend.size(); ++i)
                blend[i] = (1.0 - rep.gamma) * rep.u[i] + rep.gamma * v[i];
            if (dot(blend, pa) > 1e-12) return false;
        }
        return true;
    }
    if (min_coord(a) < 1e-3)
        throw std::invalid_argument("outer_probe: probe center not interior");

    std::vector<double> gaps(m);
    for (std::size_t j = 0; j < m; ++j)
        gaps[j] = (1.0 - rep.gamma) * dot(rep.u, pa) + rep.gamma * dot(V[j], pa);
    std::size_t jstar = std::size_t(
        std::max_element(gaps.begin(), gaps.end()) - gaps.begin());

    // x raising every rival benchmark while keeping the offending one level
    Vec xwit;
    if (gaps[jstar] > 1e-11 && m >= 2) {
        std::vector<lp::Constraint> cons;
        Vec ones(n + 1, 1.0);
        ones[n] = 0.0;
        cons.push_back({ones, lp::Rel::Eq, 1.0});
        for (std::size_t k = 0; k < m; ++k) {
            Vec r(n + 1, 0.0);
            for (std::size_t i = 0; i < n; ++i) r[i] = V[k][i];
            if (k == jstar) {
                // equality, not <=: with v_j*.x pinned to v_j*.a every hull
                // mixture v has v.x - v.a >= t(1 - lambda_j*), so the witness
                // raises mixture benchmarks too, not just the extreme ones
                cons.push_back({r, lp::Rel::Eq, dot(V[k], a)});
            } else {
                r[n] = -1.0;
                cons.push_back({r, lp::Rel::Ge, dot(V[k], a)});
            }
        }
        Vec c(n + 1, 0.0);
        c[n] = 1.0;
        auto res = lp::maximize(c, cons);
        if (res.status == lp::Status::Optimal && res.value > 1e-9)
            xwit.assign(res.x.begin(), res.x.begin() + n);
    }

    auto rng = make_rng(2027);
    for (int k = 0; k <= 10; ++k) {
        double eps = std::ldexp(1.0, -k);
        Vec pe(a);
        axpy(pe, eps, pa);
        std::vector<Vec> A2{a, pe};
        auto strictly_pe = [&](const Vec& x) {
            std::vector<Vec> A1{a, pe, x};
            // wide tie band: a solo win over it is a real strict preference,
            // not a knife-edge tie resolved by solver noise
            auto q = oracle.choose(A2, A1, 1e-7);
            return q.size() == 1 && q[0] == 1;
        };
        if (!xwit.empty() && strictly_pe(xwit)) return false;
        for (std::size_t t = 0; t < search_budget; ++t)
            if (strictly_pe(random_interior_lottery(rng, n))) return false;
    }
    return true;
}

// ---- recovery -------------------------------------------------------------

std::vector<std::size_t> recover_material_preference(const ChoiceOracle& oracle,
                                                     const std::vector<Vec>& probes) {
    const std::size_t k = probes.size();
    if (k == 0) throw std::invalid_argument("no probes");
    std::vector<std::vector<bool>> geq(k, std::vector<bool>(k, true));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            std::vector<Vec> menu{probes[i], probes[j]};
            auto q = oracle.choose(menu, menu);
            geq[i][j] = contains(q, 0);
            geq[j][i] = contains(q, 1);
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < k; ++l)
                if (geq[i][j] && geq[j][l] && !geq[i][l])
                    throw std::logic_error("recovered preference not transitive");
    std::vector<std::size_t> rank(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (geq[j][i] && !geq[i][j]) ++rank[i];
    return rank;
}

Vec recover_material_direction(const ChoiceOracle& oracle, const Vec& a) {
    const auto& sp = oracle.rep().space;
    const std::size_t n = sp.size();
    validate_lottery(a);
    if (min_coord(a) < 1e-3)
        throw std::invalid_argument("probe center not interior");
    auto basis = marginal_tangent_basis(sp);
    if (basis.empty()) throw UnderDeterminedError("marginal subspace is trivial");
    const double delta = 0.1 * min_coord(a);

    auto sgn = [&](const Vec& d) -> int {
        Vec dd = scaled(d, 1.0 / std::max(max_abs(d), 1e-300));
        Vec hi(a), lo(a);
        axpy(hi, delta, dd);
        axpy(lo, -delta, dd);
        std::vector<Vec> menu{hi, lo};
        auto q = oracle.choose(menu, menu);
        if (q.size() == 2) return 0;
        return q[0] == 0 ? 1 : -1;
    };

    std::size_t pivot = basis.size();
    int sigma = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        int s = sgn(basis[i]);
        if (s != 0) {
            pivot = i;
            sigma = s;
            break;
        }
    }
    if (pivot == basis.size())
        throw UnderDeterminedError("material utility flat on marginal subspace");

    Vec coef(basis.size(), 0.0);
    coef[pivot] = double(sigma);
    const double half_pi = std::acos(0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i == pivot) continue;
        auto dir_at = [&](double phi) {
            Vec d = scaled(basis[i], std::cos(phi));
            axpy(d, -std::sin(phi) * double(sigma), basis[pivot]);
            return d;
        };
        double lo = -half_pi + 1e-6, hi = half_pi - 1e-6;
        double phi = 0.0;
        bool hit = false;
        for (int it = 0; it < 48; ++it) {
            phi = 0.5 * (lo + hi);
            int s = sgn(dir_at(phi));
            if (s == 0) { hit = true; break; }
            if (s > 0)
                lo = phi;
            else
                hi = phi;
        }
        if (!hit) phi = 0.5 * (lo + hi);
        coef[i] = std::tan(phi);
    }
    Vec out(n, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) axpy(out, coef[i], basis[i]);
    Vec u = unit2(out);
    if (u.empty()) throw UnderDeterminedError("material direction vanished");
    return u;
}

namespace {

// RANSAC facet fit over boundary directions; crows are orthonormal rows the
// normals must annihilate (tangency constraints)
std::vector<Vec> fit_cone_normals(const std::vector<Vec>& boundary,
                                  const std::vector<Vec>& member_dirs,
                                  const std::vector<Vec>& crows, std::size_t n,
                                  std::mt19937_64& rng) {
    const std::size_t subdim = n - crows.size();
    const std::size_t k = subdim - 1;  // points per hyperplane through origin
    if (k == 0 || boundary.size() < k)
        throw UnderDeterminedError("too few boundary points for a facet fit");

    auto orient = [&](Vec& nv) -> double {
        double pos = 0.0, neg = 0.0;
        for (const auto& d : member_dirs) {
            double t = dot(nv, d);
            pos = std::max(pos, t);
            neg = std::max(neg, -t);
        }
        if (neg < pos) {
            for (auto& x : nv) x = -x;
            return neg;
        }
        return pos;
    };

    struct Cand {
        Vec normal;
        std::size_t inliers;
    };
    std::vector<Cand> cands;
    std::uniform_int_distribution<std::size_t> pick(0, boundary.size() - 1);
    const std::size_t min_inl =
        std::max<std::size_t>(k, boundary.size() / 12);
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<std::size_t> idx;
        while (idx.size() < k) {
            std::size_t c = pick(rng);
            if (!contains(idx, c)) idx.push_back(c);
        }
        std::vector<Vec> rows;
        for (std::size_t i : idx) rows.push_back(boundary[i]);
        for (const auto& r : crows) rows.push_back(r);
        Vec nv = nullspace_unit(rows, n);
        if (nv.empty()) continue;
        double viol = orient(nv);
        if (viol > 5e-3) continue;
        std::size_t cnt = 0;
        for (const auto& bd : boundary)
            if (std::fabs(dot(nv, bd)) <= 2.5e-3) ++cnt;
        if (cnt < min_inl) continue;
        cands.push_back({std::move(nv), cnt});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.inliers > b.inliers; });

    std::vector<Vec> accepted;
    std::vector<bool> covered(boundary.size(), false);
    auto coverage_done = [&]() {
        for (bool c : covered)
            if (!c) return false;
        return true;
    };
    for (const auto& cand : cands) {
        bool dup = false;
        for (const auto& acc : accepted)
            if (angular_error(cand.normal, acc) < 0.03) { dup = true; break; }
        if (dup) continue;
        accepted.push_back(cand.normal);
        for (std::size_t i = 0; i < boundary.size(); ++i)
            if (std::fabs(dot(cand.normal, boundary[i])) <= 3e-3) covered[i] = true;
        if (coverage_done()) break;
    }
    if (accepted.empty())
        throw UnderDeterminedError("no consistent facet found");

    // least-squares refinement on each facet's inliers
    for (auto& nv : accepted) {
        std::vector<Vec> M(n, Vec(n, 0.0));
        std::size_t cnt = 0;
        for (const auto& bd : boundary) {
            if (std::fabs(dot(nv, bd)) > 2.5e-3) continue;
            ++cnt;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) M[i][j] += bd[i] * bd[j];
        }
        if (cnt < k) continue;
        for (const auto& r : crows)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    M[i][j] += 1e4 * r[i] * r[j];
        Vec refined = smallest_eigvec(M);
        double viol = orient(refined);
        if (viol <= 5e-3 && angular_error(refined, nv) < 0.05) nv = refined;
    }
    return accepted;
}

}  // namespace

std::vector<Vec> recover_rationale_cone(const ChoiceOracle& oracle, const Vec& a,
                                        std::size_t sample_count,
                                        std::uint64_t seed, Mode mode) {
    const std::size_t n = oracle.rep().space.size();
    validate_lottery(a);
    if (min_coord(a) < 1e-3)
        throw std::invalid_argument("probe center not interior");
    auto rng = make_rng(seed);
    auto crows = ones_row(n);
    const double delta = 0.2 * min_coord(a);

    auto classify = [&](const Vec& dir) {
        Vec p(a);
        axpy(p, delta, dir);
        return inner_cone_membership(oracle, a, p, mode, 0);
    };

    std::vector<Vec> members, outsiders;
    for (std::size_t i = 0; i < sample_count; ++i) {
        Vec d = random_dir(rng, n, crows);
        (classify(d) ? members : outsiders).push_back(std::move(d));
    }
    if (members.empty() || outsiders.empty())
        throw UnderDeterminedError("sampling did not straddle the cone boundary");

    std::vector<Vec> boundary;
    const std::size_t npairs = std::min<std::size_t>(220, 4 * outsiders.size());
    std::uniform_int_distribution<std::size_t> pm(0, members.size() - 1);
    for (std::size_t t = 0; t < npairs; ++t) {
        Vec lo = members[pm(rng)];
        Vec hi = outsiders[t % outsiders.size()];
        for (int it = 0; it < 30; ++it) {
            Vec mid(lo);
            for (std::size_t i = 0; i < n; ++i) mid[i] += hi[i];
            Vec u = unit2(mid);
            if (u.empty()) break;
            (classify(u) ? lo : hi) = u;
        }
        Vec bd(lo);
        for (std::size_t i = 0; i < n; ++i) bd[i] += hi[i];
        Vec u = unit2(bd);
        if (!u.empty()) boundary.push_back(u);
    }
    return fit_cone_normals(boundary, members, crows, n, rng);
}

GammaEstimate estimate_gamma(const ChoiceOracle& oracle, const Vec& a,
                             const Vec& u_direction,
                             const std::vector<Vec>& cone_normals,
                             std::uint64_t seed) {
    const auto& sp = oracle.rep().space;
    const std::size_t n = sp.size();
    if (cone_normals.size() < 2)
        throw UnidentifiedError("rationale cone is not full: representation irregular");
    Vec uP = unit2(block_center_(sp, u_direction));
    if (uP.empty()) throw UnidentifiedError("material direction has no marginal part");
    validate_lottery(a);
    if (min_coord(a) < 1e-3)
        throw std::invalid_argument("probe center not interior");

    auto rng = make_rng(seed);
    auto crows = block_rows(sp);
    const double delta = 0.2 * min_coord(a);

    // recover the outer cone in the marginal-tangent subspace
    auto classify = [&](const Vec& dir) {
        Vec p(a);
        axpy(p, delta, dir);
        return outer_probe(oracle, a, p, Mode::Probe, 0);
    };
    std::vector<Vec> members, outsiders;
    for (std::size_t i = 0; i < 500; ++i) {
        Vec d = random_dir(rng, n, crows);
        (classify(d) ? members : outsiders).push_back(std::move(d));
    }
    if (members.empty() || outsiders.empty())
        throw UnidentifiedError("outer cone probes did not straddle a boundary");
    std::vector<Vec> boundary;
    std::uniform_int_distribution<std::size_t> pm(0, members.size() - 1);
    const std::size_t npairs = std::min<std::size_t>(180, 4 * outsiders.size());
    for (std::size_t t = 0; t < npairs; ++t) {
        Vec lo = members[pm(rng)];
        Vec hi = outsiders[t % outsiders.size()];
        for (int it = 0; it < 30; ++it) {
            Vec mid(lo);
            for (std::size_t i = 0; i < n; ++i) mid[i] += hi[i];
            Vec u = unit2(mid);
            if (u.empty()) break;
            (classify(u) ? lo : hi) = u;
        }
        Vec bd(lo);
        for (std::size_t i = 0; i < n; ++i) bd[i] += hi[i];
        Vec u = unit2(bd);
        if (!u.empty()) boundary.push_back(u);
    }
    std::vector<Vec> outer;
    try {
        outer = fit_cone_normals(boundary, members, crows, n, rng);
    } catch (const UnderDeterminedError& e) {
        throw UnidentifiedError(e.what());
    }

    // Lemma-style scaling: each outer facet is a positive blend of the
    // material direction and one rationale direction; the blend ratio fixes
    // the rationale's scale relative to u up to the gamma odds.
    std::vector<double> ratio(cone_normals.size());
    for (std::size_t j = 0; j < cone_normals.size(); ++j) {
        Vec Pv = block_center_(sp, cone_normals[j]);
        if (nrm(Pv) < 1e-6)
            throw UnidentifiedError("rationale direction has no marginal part");
        double best = std::numeric_limits<double>::infinity();
        double best_r = 0.0;
        for (const auto& w : outer) {
            double resid;
            Vec cf = lstsq_cols({uP, Pv}, w, &resid);
            if (cf.empty()) continue;
            if (resid < best && cf[0] > 1e-6 && cf[1] > 1e-6) {
                best = resid;
                best_r = cf[1] / cf[0];
            }
        }
        if (best > 0.05)
            throw UnidentifiedError("could not scale a rationale from the outer cone");
        ratio[j] = best_r;
    }

    // fixed probe battery, biased toward material near-indifference
    auto rng2 = make_rng(seed + 101);
    struct Menu {
        std::vector<Vec> A2, A1;
        std::vector<std::size_t> obs;
    };
    std::vector<Menu> battery;
    for (int t = 0; t < 160; ++t) {
        Vec q1 = random_interior_lottery(rng2, n);
        Vec d = random_dir(rng2, n, crows);
        axpy(d, -dot(d, uP), uP);
        Vec g = random_dir(rng2, n, crows);
        axpy(d, 0.12, g);
        Vec du = unit2(d);
        if (du.empty()) continue;
        Vec q2 = q1;
        axpy(q2, 0.25 * min_coord(q1) / std::max(max_abs(du), 1e-12), du);
        Menu menu;
        menu.A2 = {q1, q2};
        menu.A1 = menu.A2;
        if (t % 2 == 0) menu.A1.push_back(random_interior_lottery(rng2, n));
        menu.obs = oracle.choose(menu.A2, menu.A1);
        battery.push_back(std::move(menu));
    }
    if (battery.empty()) throw UnidentifiedError("empty probe battery");

    auto model_regret = [&](const std::vector<Vec>& exts, const Vec& q,
                            const std::vector<Vec>& A1) {
        const std::size_t m = exts.size();
        std::vector<lp::Constraint> cons;
        for (const auto& b : A1) {
            Vec r(m + 2, 0.0);
            for (std::size_t j = 0; j < m; ++j) r[j] = dot(exts[j], diff(q, b));
            r[m] = -1.0;
            r[m + 1] = 1.0;
            cons.push_back({r, lp::Rel::Ge, 0.0});
        }
        Vec ones(m + 2, 1.0);
        ones[m] = ones[m + 1] = 0.0;
        cons.push_back({ones, lp::Rel::Eq, 1.0});
        Vec c(m + 2, 0.0);
        c[m] = 1.0;
        c[m + 1] = -1.0;
        auto res = lp::maximize(c, cons);
        return res.value;
    };

    auto evaluate = [&](double g) {
        double s = (1.0 - g) / g;
        std::vector<Vec> exts;
        std::vector<Vec> bexts;
        for (std::size_t j = 0; j < cone_normals.size(); ++j) {
            exts.push_back(scaled(cone_normals[j], ratio[j] * s));
            bexts.push_back(block_center_(sp, exts.back()));
        }
        Vec weights;
        double resid = hull_distance(bexts, uP, &weights);
        Vec umodel(n, 0.0);
        for (std::size_t j = 0; j < exts.size(); ++j)
            axpy(umodel, weights[j], exts[j]);
        std::size_t dis = 0;
        for (const auto& menu : battery) {
            std::vector<double> vals(menu.A2.size());
            for (std::size_t i = 0; i < menu.A2.size(); ++i)
                vals[i] = (1.0 - g) * dot(umodel, menu.A2[i]) +
                          g * model_regret(exts, menu.A2[i], menu.A1);
            double best = *std::max_element(vals.begin(), vals.end());
            std::vector<std::size_t> pred;
            for (std::size_t i = 0; i < vals.size(); ++i)
                if (vals[i] >= best - kChoiceTol) pred.push_back(i);
            if (pred != menu.obs) ++dis;
        }
        return std::pair<std::size_t, double>(dis, resid);
    };

    if (std::getenv("EPR_ID_DEBUG")) {
        for (const auto& w : outer) {
            std::fprintf(stderr, "[outer]");
            for (double x : w) std::fprintf(stderr, " %.4f", x);
            std::fprintf(stderr, "\n");
        }
        for (std::size_t j = 0; j < ratio.size(); ++j)
            std::fprintf(stderr, "[ratio %zu] %.6f\n", j, ratio[j]);
        for (double g = 0.1; g < 0.95; g += 0.1) {
            auto sc = evaluate(g);
            std::fprintf(stderr, "[g %.2f] dis=%zu resid=%.6e\n", g, sc.first,
                         sc.second);
        }
    }

    double best_g = 0.5;
    std::pair<std::size_t, double> best_score{std::size_t(-1),
                                              std::numeric_limits<double>::infinity()};
    std::size_t dis_min = std::size_t(-1), dis_max = 0;
    double res_min = std::numeric_limits<double>::infinity(), res_max = 0.0;
    auto consider = [&](double g) {
        auto sc = evaluate(g);
        dis_min = std::min(dis_min, sc.first);
        dis_max = std::max(dis_max, sc.first);
        res_min = std::min(res_min, sc.second);
        res_max = std::max(res_max, sc.second);
        if (sc < best_score) {
            best_score = sc;
            best_g = g;
        }
    };
    for (int i = 2; i <= 98; ++i) consider(0.01 * i);
    if (dis_max == dis_min && res_max - res_min < 1e-9)
        throw UnidentifiedError("flat disagreement profile: oracle not regular");
    double lo = std::max(0.005, best_g - 0.01), hi = std::min(0.995, best_g + 0.01);
    for (double g = lo; g <= hi + 1e-12; g += 0.002) consider(g);
    lo = std::max(0.003, best_g - 0.002);
    hi = std::min(0.997, best_g + 0.002);
    for (double g = lo; g <= hi + 1e-12; g += 0.0005) consider(g);
    return {best_g, best_score.first};
}

bool verify_affine_equivalence(const RegularRepresentation& A,
                               const RegularRepresentation& B) {
    if (A.space.offset != B.space.offset)
        throw std::invalid_argument("representations on different outcome spaces");
    if (A.gamma != B.gamma) return false;
    if (A.extremes.size() != B.extremes.size()) return false;
    const std::size_t m = A.extremes.size();

    std::vector<Vec> ca, cb;
    for (const auto& v : A.extremes) ca.push_back(center(v));
    for (const auto& v : B.extremes) cb.push_back(center(v));
    Vec ua = center(A.u), ub = center(B.u);

    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        double num = dot(ub, ua), den = dot(ua, ua);
        for (std::size_t j = 0; j < m; ++j) {
            num += dot(cb[perm[j]], ca[j]);
            den += dot(ca[j], ca[j]);
        }
        if (den < 1e-18) continue;
        double alpha = num / den;
        if (alpha <= 1e-12) continue;
        double r2 = 0.0;
        {
            Vec r(ub);
            axpy(r, -alpha, ua);
            r2 += dot(r, r);
        }
        for (std::size_t j = 0; j < m; ++j) {
            Vec r(cb[perm[j]]);
            axpy(r, -alpha, ca[j]);
            r2 += dot(r, r);
        }
        if (std::sqrt(r2) < 1e-8) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// ---- helpers & generator ---------------------------------------------------

Vec centered_unit(const Vec& v) {
    Vec u = unit2(center(v));
    if (u.empty()) throw std::invalid_argument("constant vector has no direction");
    return u;
}

double angular_error(const Vec& a, const Vec& b) {
    double c = std::fabs(dot(a, b)) / std::max(nrm(a) * nrm(b), 1e-300);
    return std::acos(std::clamp(c, 0.0, 1.0));
}

RegularRepresentation random_regular(std::uint64_t seed,
                                     std::size_t max_extremes) {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> U(0.0, 2.0);
    for (int attempt = 0; attempt < 4000; ++attempt) {
        OutcomeSpace sp;
        sp.z1 = {"0", "1"};
        sp.z2.clear();
        for (int b = 0; b < 2; ++b) {
            std::vector<std::string> blk{"0", "1"};
            if (rng() % 2) blk.push_back("2");
            sp.z2.push_back(blk);
        }
        sp.finalize();
        const std::size_t n = sp.size();
        const std::size_t dm = n - sp.blocks();
        std::size_t m = 2 + rng() % 3;
        m = std::min({m, max_extremes, dm});
        if (m < 2) continue;

        std::vector<Vec> V(m, Vec(n));
        for (auto& v : V)
            for (auto& x : v) x = U(rng);

        // thin-hull condition: block-centered extremes linearly independent
        std::vector<Vec> bc, cg, bcu_list;
        bool ok = true;
        for (const auto& v : V) {
            bc.push_back(block_center_(sp, v));
            cg.push_back(center(v));
            if (nrm(bc.back()) < 0.3 || nrm(cg.back()) < 0.3) ok = false;
        }
        if (!ok) continue;
        {
            std::vector<Vec> G(m, Vec(m));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    G[i][j] = dot(unit2(bc[i]), unit2(bc[j]));
            std::vector<Vec> Gc(G);
            Vec ev = smallest_eigvec(Gc);
            double lam = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < m; ++j) s += G[i][j] * ev[j];
                lam += ev[i] * s;
            }
            if (lam < 0.1) continue;
        }
        // inner facets: globally-centered extremes conically independent, pointed
        for (std::size_t j = 0; j < m && ok; ++j) {
            std::vector<Vec> others;
            for (std::size_t k = 0; k < m; ++k)
                if (k != j) others.push_back(cg[k]);
            if (cone_distance(others, cg[j]) < 0.15 * nrm(cg[j])) ok = false;
        }
        if (!ok) continue;
        {
            std::vector<Vec> units;
            for (const auto& v : cg) units.push_back(unit2(v));
            if (hull_distance(units, Vec(n, 0.0), nullptr) < 0.2) continue;
        }

        Vec lam(m);
        double s = 0.0;
        for (auto& x : lam) {
            x = 0.2 + U(rng);
            s += x;
        }
        for (auto& x : lam) x /= s;
        Vec u(n, 0.0);
        for (std::size_t j = 0; j < m; ++j) axpy(u, lam[j], V[j]);
        Vec Pu = block_center_(sp, u);
        if (nrm(Pu) < 0.2) continue;
        for (std::size_t j = 0; j < m && ok; ++j) {
            double ang = real_angle(Pu, bc[j]);
            if (ang < 0.15 || ang > std::acos(-1.0) - 0.15) ok = false;
        }
        if (!ok) continue;

        double gamma = 0.20 + 0.05 * double(rng() % 13);

        // outer facets well separated at this gamma
        std::vector<Vec> om;
        for (std::size_t j = 0; j < m; ++j) {
            Vec w = scaled(Pu, 1.0 - gamma);
            axpy(w, gamma, bc[j]);
            om.push_back(w);
            if (nrm(w) < 0.15) ok = false;
        }
        for (std::size_t j = 0; j < m && ok; ++j) {
            std::vector<Vec> others;
            for (std::size_t k = 0; k < m; ++k)
                if (k != j) others.push_back(om[k]);
            if (cone_distance(others, om[j]) < 0.12 * nrm(om[j])) ok = false;
        }
        if (!ok) continue;
        {
            std::vector<Vec> units;
            for (const auto& v : om) units.push_back(unit2(v));
            if (hull_distance(units, Vec(n, 0.0), nullptr) < 0.15) continue;
        }

        RegularRepresentation rep;
        rep.space = sp;
        rep.gamma = gamma;
        rep.u = u;
        rep.extremes = V;
        try {
            rep.validate();
        } catch (const std::invalid_argument&) {
            continue;
        }
        return rep;
    }
    throw std::runtime_error("random_regular: generation failed");
}

}  // namespace epr::ident
