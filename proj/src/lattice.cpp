#include "epr/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "epr/core_model.hpp"

namespace epr::lattice {

namespace {
constexpr double kTol = 1e-10;
}

void Poset::validate() const {
    if (leq_.size() != n * n) throw std::invalid_argument("poset: bad table size");
    for (std::size_t a = 0; a < n; ++a) {
        if (!leq(a, a)) throw std::invalid_argument("poset: not reflexive");
        for (std::size_t b = 0; b < n; ++b) {
            if (a != b && leq(a, b) && leq(b, a))
                throw std::invalid_argument("poset: not antisymmetric");
            for (std::size_t c = 0; c < n; ++c)
                if (leq(a, b) && leq(b, c) && !leq(a, c))
                    throw std::invalid_argument("poset: not transitive");
        }
    }
}

Poset Poset::chain(std::size_t n) {
    Poset p;
    p.n = n;
    p.leq_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) p.leq_[a * n + b] = 1;
    return p;
}

Lattice Lattice::from_poset(const Poset& p) {
    p.validate();
    Lattice lat;
    lat.n = p.n;
    lat.leq_ = p.leq_;
    lat.join_.assign(p.n * p.n, 0);
    lat.meet_.assign(p.n * p.n, 0);
    for (std::size_t a = 0; a < p.n; ++a)
        for (std::size_t b = 0; b < p.n; ++b) {
            // least upper bound
            std::size_t jn = p.n, mt = p.n;
            for (std::size_t c = 0; c < p.n; ++c) {
                if (p.leq(a, c) && p.leq(b, c) && (jn == p.n || p.leq(c, jn))) jn = c;
                if (p.leq(c, a) && p.leq(c, b) && (mt == p.n || p.leq(mt, c))) mt = c;
            }
            // verify they really bound every candidate
            if (jn == p.n || mt == p.n)
                throw std::invalid_argument("not a lattice: missing join/meet");
            for (std::size_t c = 0; c < p.n; ++c) {
                if (p.leq(a, c) && p.leq(b, c) && !p.leq(jn, c))
                    throw std::invalid_argument("not a lattice: join not least");
                if (p.leq(c, a) && p.leq(c, b) && !p.leq(c, mt))
                    throw std::invalid_argument("not a lattice: meet not greatest");
            }
            lat.join_[a * p.n + b] = jn;
            lat.meet_[a * p.n + b] = mt;
        }
    return lat;
}

Lattice Lattice::chain(std::size_t n) { return from_poset(Poset::chain(n)); }

Lattice Lattice::product(const Lattice& x, const Lattice& y) {
    Lattice lat;
    lat.n = x.n * y.n;
    lat.leq_.assign(lat.n * lat.n, 0);
    lat.join_.assign(lat.n * lat.n, 0);
    lat.meet_.assign(lat.n * lat.n, 0);
    auto idx = [&](std::size_t i, std::size_t j) { return i * y.n + j; };
    for (std::size_t i = 0; i < x.n; ++i)
        for (std::size_t j = 0; j < y.n; ++j)
            for (std::size_t k = 0; k < x.n; ++k)
                for (std::size_t l = 0; l < y.n; ++l) {
                    std::size_t a = idx(i, j), b = idx(k, l);
                    lat.leq_[a * lat.n + b] = x.leq(i, k) && y.leq(j, l);
                    lat.join_[a * lat.n + b] = idx(x.join(i, k), y.join(j, l));
                    lat.meet_[a * lat.n + b] = idx(x.meet(i, k), y.meet(j, l));
                }
    return lat;
}

bool strong_set_order_leq(const std::vector<std::size_t>& Y,
                          const std::vector<std::size_t>& Z, const Lattice& lat) {
    if (Y.empty() || Z.empty())
        throw std::domain_error("strong set order needs nonempty sets");
    auto member = [](const std::vector<std::size_t>& S, std::size_t e) {
        return std::find(S.begin(), S.end(), e) != S.end();
    };
    for (std::size_t y : Y) {
        if (y >= lat.n) throw std::domain_error("element outside lattice");
        for (std::size_t z : Z) {
            if (z >= lat.n) throw std::domain_error("element outside lattice");
            if (!member(Y, lat.meet(y, z))) return false;
            if (!member(Z, lat.join(y, z))) return false;
        }
    }
    return true;
}

void LatticeInstance::validate() const {
    a1.validate();
    if (menu.size() != a1.n) throw std::invalid_argument("menu count mismatch");
    for (const auto& m : menu) {
        if (m.empty()) throw std::invalid_argument("empty menu");
        for (std::size_t j : m)
            if (j >= a2.n) throw std::invalid_argument("menu element outside A2");
    }
    if (theta.empty()) throw std::invalid_argument("empty theta grid");
    for (std::size_t t = 1; t < theta.size(); ++t)
        if (!(theta[t] > theta[t - 1]))
            throw std::invalid_argument("theta not strictly increasing");
    if (theta_star >= theta.size()) throw std::invalid_argument("bad theta*");
    if (w_.size() != a1.n * a2.n * theta.size() * n_states)
        throw std::invalid_argument("payoff table size mismatch");
    for (double v : w_)
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite payoff");
}

std::optional<Violation> increasing_differences_violation(const LatticeInstance& in) {
    const std::size_t nt = in.theta.size();
    for (std::size_t s = 0; s < in.n_states; ++s)
        for (std::size_t i = 0; i < in.a1.n; ++i)
            for (std::size_t ip = 0; ip < in.a1.n; ++ip) {
                if (i == ip || !in.a1.leq(i, ip)) continue;
                for (std::size_t j = 0; j < in.a2.n; ++j)
                    for (std::size_t jp = 0; jp < in.a2.n; ++jp) {
                        if (!in.a2.leq(j, jp)) continue;
                        for (std::size_t t = 0; t < nt; ++t)
                            for (std::size_t tp = t; tp < nt; ++tp) {
                                double lhs = in.w(ip, jp, tp, s) - in.w(ip, j, t, s);
                                double rhs = in.w(i, jp, tp, s) - in.w(i, j, t, s);
                                if (lhs < rhs - kTol) {
                                    std::ostringstream os;
                                    os << "increasing differences fails at s=" << s
                                       << " a1=" << i << "<=" << ip << " a2=" << j
                                       << "<=" << jp << " theta=" << in.theta[t]
                                       << "<=" << in.theta[tp] << " (" << lhs
                                       << " < " << rhs << ")";
                                    return Violation{os.str()};
                                }
                            }
                    }
            }
    return std::nullopt;
}

std::optional<Violation> supermodularity_violation(const LatticeInstance& in) {
    const std::size_t nt = in.theta.size();
    for (std::size_t s = 0; s < in.n_states; ++s)
        for (std::size_t i = 0; i < in.a1.n; ++i)
            for (std::size_t j = 0; j < in.a2.n; ++j)
                for (std::size_t jp = 0; jp < in.a2.n; ++jp)
                    for (std::size_t t = 0; t < nt; ++t)
                        for (std::size_t tp = 0; tp < nt; ++tp) {
                            std::size_t ju = in.a2.join(j, jp), jm = in.a2.meet(j, jp);
                            std::size_t tu = std::max(t, tp), tm = std::min(t, tp);
                            double lhs = in.w(i, ju, tu, s) + in.w(i, jm, tm, s);
                            double rhs = in.w(i, j, t, s) + in.w(i, jp, tp, s);
                            if (lhs < rhs - kTol) {
                                std::ostringstream os;
                                os << "supermodularity fails at s=" << s << " a1=" << i
                                   << " pairs (" << j << "," << in.theta[t] << ") ("
                                   << jp << "," << in.theta[tp] << ") (" << lhs
                                   << " < " << rhs << ")";
                                return Violation{os.str()};
                            }
                        }
    return std::nullopt;
}

bool has_increasing_differences(const LatticeInstance& in) {
    return !increasing_differences_violation(in).has_value();
}
bool is_supermodular_in_a2_theta(const LatticeInstance& in) {
    return !supermodularity_violation(in).has_value();
}

bool menu_monotone(const LatticeInstance& in) {
    for (std::size_t i = 0; i < in.a1.n; ++i)
        for (std::size_t ip = 0; ip < in.a1.n; ++ip) {
            if (!in.a1.leq(i, ip)) continue;
            if (!strong_set_order_leq(in.menu[i], in.menu[ip], in.a2)) return false;
        }
    return true;
}

namespace {

// ex-post optimal first actions at theta*, state s
std::vector<std::size_t> expost_optimal_a1(const LatticeInstance& in,
                                           std::size_t s) {
    std::vector<double> cont(in.a1.n, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < in.a1.n; ++i)
        for (std::size_t j : in.menu[i])
            cont[i] = std::max(cont[i], in.w(i, j, in.theta_star, s));
    double best = *std::max_element(cont.begin(), cont.end());
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < in.a1.n; ++i)
        if (cont[i] >= best - kTol) out.push_back(i);
    return out;
}

core::DecisionProblem as_problem(const LatticeInstance& in) {
    core::DecisionProblem p;
    p.states = {"s"};
    p.prior = {1.0};
    for (std::size_t i = 0; i < in.a1.n; ++i) {
        p.first_menu.push_back("x" + std::to_string(i));
        std::vector<std::string> m;
        for (std::size_t j : in.menu[i]) m.push_back("y" + std::to_string(j));
        p.second_menu.push_back(std::move(m));
    }
    p.finalize();
    return p;
}

core::RationaleFamily as_family(const LatticeInstance& in,
                                const core::DecisionProblem& p, std::size_t s) {
    std::vector<core::UtilityTable> tables(in.theta.size());
    for (std::size_t t = 0; t < in.theta.size(); ++t) {
        tables[t].values.assign(p.n_pairs(), std::vector<double>(1));
        for (std::size_t i = 0; i < in.a1.n; ++i)
            for (std::size_t j = 0; j < in.menu[i].size(); ++j)
                tables[t].values[p.pair_index(i, j)][0] =
                    in.w(i, in.menu[i][j], t, s);
    }
    return core::RationaleFamily::tabular(std::move(tables), in.theta_star);
}

}  // namespace

Theorem2Report check_theorem2(const LatticeInstance& in, std::size_t state,
                              std::size_t a1_bar) {
    Theorem2Report rep;
    if (state >= in.n_states || a1_bar >= in.a1.n)
        throw std::domain_error("check_theorem2: index out of range");

    auto opt = expost_optimal_a1(in, state);
    bool up = false, down = false;  // a1_bar above / below some optimizer
    for (std::size_t i : opt) {
        if (in.a1.leq(i, a1_bar)) up = true;
        if (in.a1.leq(a1_bar, i)) down = true;
    }
    if (!up && !down) {
        rep.verdict = Verdict::Inapplicable;
        return rep;
    }

    const auto& menu = in.menu[a1_bar];
    const std::size_t n2 = menu.size(), nt = in.theta.size();

    // classical argmax of w(a1_bar, ., theta*, s) over the menu
    double cbest = -std::numeric_limits<double>::infinity();
    for (std::size_t j : menu)
        cbest = std::max(cbest, in.w(a1_bar, j, in.theta_star, state));
    for (std::size_t j : menu)
        if (in.w(a1_bar, j, in.theta_star, state) >= cbest - kTol)
            rep.classical.push_back(j);

    // rationalizing argmax via core_model on the same data
    auto problem = as_problem(in);
    auto family = as_family(in, problem, state);
    auto cr = core::second_period_choice(problem, family, in.gamma, a1_bar, 0);
    for (std::size_t k : cr.chosen) rep.rationalizing.push_back(menu[k]);

    // independent enumeration of the joint (a2, theta) argmax
    std::vector<double> expost(nt, -std::numeric_limits<double>::infinity());
    for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t i = 0; i < in.a1.n; ++i)
            for (std::size_t j : in.menu[i])
                expost[t] = std::max(expost[t], in.w(i, j, t, state));
    auto tu = [&](std::size_t j, std::size_t t) {
        return (1.0 - in.gamma) * in.w(a1_bar, j, in.theta_star, state) +
               in.gamma * (in.w(a1_bar, j, t, state) - expost[t]);
    };
    double rbest = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t t = 0; t < nt; ++t) rbest = std::max(rbest, tu(menu[k], t));
    std::vector<std::size_t> renum;
    for (std::size_t k = 0; k < n2; ++k) {
        bool in_set = false;
        for (std::size_t t = 0; t < nt; ++t)
            if (tu(menu[k], t) >= rbest - kTol) in_set = true;
        if (in_set) renum.push_back(menu[k]);
    }
    if (renum != rep.rationalizing) {
        rep.verdict = Verdict::Violated;
        rep.detail = "core_model argmax disagrees with enumeration oracle";
        return rep;
    }

    // Appendix-B inclusion: in the upward case, maximizing pairs with theta
    // below theta* must use a materially optimal a2 (dually for downward)
    auto materially_optimal = [&](std::size_t j) {
        return std::find(rep.classical.begin(), rep.classical.end(), j) !=
               rep.classical.end();
    };
    for (std::size_t k = 0; k < n2; ++k)
        for (std::size_t t = 0; t < nt; ++t) {
            if (tu(menu[k], t) < rbest - kTol || materially_optimal(menu[k]))
                continue;
            if (up && t < in.theta_star) rep.lemma5_ok = false;
            if (down && t > in.theta_star) rep.lemma5_ok = false;
        }

    // set-order claim + theta witnesses per direction
    auto witness_dir = [&](bool upward) -> bool {
        rep.witness_theta.assign(rep.rationalizing.size(), nt);
        for (std::size_t k = 0; k < rep.rationalizing.size(); ++k) {
            std::size_t j = rep.rationalizing[k];
            std::size_t t0 = upward ? in.theta_star : 0;
            std::size_t t1 = upward ? nt : in.theta_star + 1;
            for (std::size_t t = t0; t < t1; ++t) {
                // j in argmax over the menu of the Eq.(5) objective at theta t
                double m = -std::numeric_limits<double>::infinity();
                for (std::size_t jj : menu) m = std::max(m, tu(jj, t));
                if (tu(j, t) >= m - kTol) {
                    rep.witness_theta[k] = t;
                    break;
                }
            }
            if (rep.witness_theta[k] == nt) return false;
        }
        return true;
    };

    bool ok = true;
    std::string why;
    if (up) {
        if (!strong_set_order_leq(rep.classical, rep.rationalizing, in.a2)) {
            ok = false;
            why = "classical !<< rationalizing in strong set order";
        } else if (!witness_dir(true)) {
            ok = false;
            why = "no theta witness >= theta* for some rationalizing a2";
        }
    }
    if (ok && down) {
        if (!strong_set_order_leq(rep.rationalizing, rep.classical, in.a2)) {
            ok = false;
            why = "rationalizing !<< classical in strong set order";
        } else if (!witness_dir(false)) {
            ok = false;
            why = "no theta witness <= theta* for some rationalizing a2";
        }
    }
    rep.verdict = ok ? Verdict::Holds : Verdict::Violated;
    if (!ok) rep.detail = why;
    return rep;
}

namespace {

using Rng = std::mt19937_64;

double unif(Rng& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

// monotone non-negative function on a chain: prefix sums of non-negatives
std::vector<double> monotone_chain(Rng& g, std::size_t n) {
    std::vector<double> f(n);
    double acc = unif(g, 0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = acc;
        acc += unif(g, 0.0, 1.0);
    }
    return f;
}

// monotone + supermodular non-negative function on a distributive lattice:
// g(a) = sum of non-negative weights over the down-set of a
std::vector<double> monotone_supermodular(Rng& g, const Lattice& lat) {
    std::vector<double> r(lat.n), out(lat.n, 0.0);
    for (auto& x : r) x = unif(g, 0.0, 1.0);
    for (std::size_t a = 0; a < lat.n; ++a)
        for (std::size_t y = 0; y < lat.n; ++y)
            if (lat.leq(y, a)) out[a] += r[y];
    return out;
}

}  // namespace

LatticeInstance random_instance(std::uint64_t seed, const SizeParams& sz,
                                Construction c) {
    if (sz.n_a1 < 1 || sz.n_a2 < 1 || sz.n_theta < 1 || sz.n_states < 1)
        throw std::invalid_argument("sizes must be >= 1");
    Rng g(seed * 0x9e3779b97f4a7c15ull + 12345);

    LatticeInstance in;
    in.n_states = sz.n_states;
    in.gamma = unif(g, 0.05, 0.95);

    std::size_t n2;
    if (c == Construction::Separable) {
        // same-problem-twice shape: A1 and A2 are the same chain
        n2 = sz.n_a2;
        in.a1 = Poset::chain(n2);
        in.a2 = Lattice::chain(n2);
    } else {
        in.a1 = Poset::chain(sz.n_a1);
        in.a2 = sz.a2_grid ? Lattice::product(Lattice::chain(2), Lattice::chain(3))
                           : Lattice::chain(sz.n_a2);
        n2 = in.a2.n;
    }

    in.theta.resize(sz.n_theta);
    {
        double acc = unif(g, -1.0, 1.0);
        for (std::size_t t = 0; t < sz.n_theta; ++t) {
            in.theta[t] = acc;
            acc += unif(g, 0.1, 1.0);
        }
    }
    in.theta_star = std::uniform_int_distribution<std::size_t>(0, sz.n_theta - 1)(g);

    // menus: constant or monotone intervals [lo(a1), hi(a1)]
    bool constant_menu = std::uniform_int_distribution<int>(0, 1)(g) == 0;
    if (constant_menu) {
        std::vector<std::size_t> full(n2);
        for (std::size_t j = 0; j < n2; ++j) full[j] = j;
        in.menu.assign(in.a1.n, full);
    } else {
        // pick per-a1 interval bounds, monotone in a1, lo <= hi elementwise
        std::vector<std::size_t> lo(in.a1.n), hi(in.a1.n);
        auto draw_monotone_idx = [&](std::size_t bound) {
            std::vector<std::size_t> v(in.a1.n);
            std::size_t cur = std::uniform_int_distribution<std::size_t>(0, bound)(g);
            for (std::size_t i = 0; i < in.a1.n; ++i) {
                v[i] = cur;
                cur = std::uniform_int_distribution<std::size_t>(cur, bound)(g);
            }
            return v;
        };
        if (sz.a2_grid && c != Construction::Separable) {
            auto lox = draw_monotone_idx(1), hix = draw_monotone_idx(1);
            auto loy = draw_monotone_idx(2), hiy = draw_monotone_idx(2);
            in.menu.resize(in.a1.n);
            for (std::size_t i = 0; i < in.a1.n; ++i) {
                std::size_t lx = std::min(lox[i], hix[i]), hx = std::max(lox[i], hix[i]);
                std::size_t ly = std::min(loy[i], hiy[i]), hy = std::max(loy[i], hiy[i]);
                for (std::size_t x = lx; x <= hx; ++x)
                    for (std::size_t y = ly; y <= hy; ++y)
                        in.menu[i].push_back(x * 3 + y);
            }
        } else {
            auto a = draw_monotone_idx(n2 - 1), b = draw_monotone_idx(n2 - 1);
            in.menu.resize(in.a1.n);
            for (std::size_t i = 0; i < in.a1.n; ++i) {
                lo[i] = std::min(a[i], b[i]);
                hi[i] = std::max(a[i], b[i]);
                for (std::size_t j = lo[i]; j <= hi[i]; ++j) in.menu[i].push_back(j);
            }
        }
    }

    in.w_.assign(in.a1.n * in.a2.n * sz.n_theta * sz.n_states, 0.0);

    std::size_t K = std::uniform_int_distribution<std::size_t>(1, 3)(g);
    if (c == Construction::SumOfMonotoneProducts) {
        for (std::size_t k = 0; k < K; ++k) {
            double ck = unif(g, 0.0, 2.0);
            auto f = monotone_chain(g, in.a1.n);
            auto gg = monotone_supermodular(g, in.a2);
            auto h = monotone_chain(g, sz.n_theta);
            for (std::size_t i = 0; i < in.a1.n; ++i)
                for (std::size_t j = 0; j < in.a2.n; ++j)
                    for (std::size_t t = 0; t < sz.n_theta; ++t)
                        for (std::size_t s = 0; s < sz.n_states; ++s)
                            in.w(i, j, t, s) += ck * f[i] * gg[j] * h[t];
        }
        // additive nuisance terms: m1(a1,s) free, m2(a2,s) modular in a2
        for (std::size_t s = 0; s < sz.n_states; ++s) {
            std::vector<double> m1(in.a1.n);
            for (auto& x : m1) x = unif(g, -1.0, 1.0);
            std::vector<double> mx(sz.a2_grid ? 2 : in.a2.n), my(3);
            for (auto& x : mx) x = unif(g, -1.0, 1.0);
            for (auto& x : my) x = unif(g, -1.0, 1.0);
            for (std::size_t i = 0; i < in.a1.n; ++i)
                for (std::size_t j = 0; j < in.a2.n; ++j) {
                    double m2 = sz.a2_grid ? mx[j / 3] + my[j % 3] : mx[j];
                    for (std::size_t t = 0; t < sz.n_theta; ++t)
                        in.w(i, j, t, s) += m1[i] + m2;
                }
        }
    } else {
        // separable: w = phi(a1,theta,s) + phi(a2,theta,s),
        // phi = sum of monotone products + state shifter
        std::vector<std::vector<double>> phi(
            sz.n_states, std::vector<double>(n2 * sz.n_theta, 0.0));
        for (std::size_t k = 0; k < K; ++k) {
            double ck = unif(g, 0.0, 2.0);
            auto f = monotone_chain(g, n2);
            auto h = monotone_chain(g, sz.n_theta);
            for (std::size_t s = 0; s < sz.n_states; ++s)
                for (std::size_t a = 0; a < n2; ++a)
                    for (std::size_t t = 0; t < sz.n_theta; ++t)
                        phi[s][a * sz.n_theta + t] += ck * f[a] * h[t];
        }
        for (std::size_t s = 0; s < sz.n_states; ++s) {
            std::vector<double> m(n2);
            for (auto& x : m) x = unif(g, -1.0, 1.0);
            for (std::size_t a = 0; a < n2; ++a)
                for (std::size_t t = 0; t < sz.n_theta; ++t)
                    phi[s][a * sz.n_theta + t] += m[a];
        }
        for (std::size_t i = 0; i < n2; ++i)
            for (std::size_t j = 0; j < n2; ++j)
                for (std::size_t t = 0; t < sz.n_theta; ++t)
                    for (std::size_t s = 0; s < sz.n_states; ++s)
                        in.w(i, j, t, s) =
                            phi[s][i * sz.n_theta + t] + phi[s][j * sz.n_theta + t];
    }

    in.validate();
    if (auto v = increasing_differences_violation(in))
        throw std::logic_error("generator broke its contract: " + v->what);
    if (auto v = supermodularity_violation(in))
        throw std::logic_error("generator broke its contract: " + v->what);
    if (!menu_monotone(in))
        throw std::logic_error("generator broke its contract: menu not monotone");
    return in;
}

LatticeInstance dual(const LatticeInstance& in) {
    LatticeInstance d = in;
    // reverse the orders in place: leq transposed, join/meet swapped
    for (std::size_t a = 0; a < in.a1.n; ++a)
        for (std::size_t b = 0; b < in.a1.n; ++b)
            d.a1.leq_[a * in.a1.n + b] = in.a1.leq_[b * in.a1.n + a];
    for (std::size_t a = 0; a < in.a2.n; ++a)
        for (std::size_t b = 0; b < in.a2.n; ++b)
            d.a2.leq_[a * in.a2.n + b] = in.a2.leq_[b * in.a2.n + a];
    std::swap(d.a2.join_, d.a2.meet_);
    // reverse the theta axis, negating values to keep the grid increasing
    std::size_t nt = in.theta.size();
    for (std::size_t t = 0; t < nt; ++t) d.theta[t] = -in.theta[nt - 1 - t];
    d.theta_star = nt - 1 - in.theta_star;
    for (std::size_t i = 0; i < in.a1.n; ++i)
        for (std::size_t j = 0; j < in.a2.n; ++j)
            for (std::size_t t = 0; t < nt; ++t)
                for (std::size_t s = 0; s < in.n_states; ++s)
                    d.w(i, j, t, s) = in.w(i, j, nt - 1 - t, s);
    return d;
}

}  // namespace epr::lattice
