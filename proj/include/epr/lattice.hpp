#pragma once
// Finite posets/lattices, the order-theoretic predicates behind the
// comparative-statics theorem, the theorem checker, and a seeded generator
// producing instances that satisfy the hypotheses by construction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace epr::lattice {

struct Poset {
    std::size_t n = 0;
    std::vector<std::uint8_t> leq_;  // row-major n x n

    bool leq(std::size_t a, std::size_t b) const { return leq_[a * n + b] != 0; }
    bool comparable(std::size_t a, std::size_t b) const {
        return leq(a, b) || leq(b, a);
    }
    void validate() const;  // reflexive, antisymmetric, transitive

    static Poset chain(std::size_t n);
};

struct Lattice : Poset {
    std::vector<std::size_t> join_, meet_;  // row-major n x n

    std::size_t join(std::size_t a, std::size_t b) const { return join_[a * n + b]; }
    std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * n + b]; }

    static Lattice from_poset(const Poset& p);  // throws if not a lattice
    static Lattice chain(std::size_t n);
    static Lattice product(const Lattice& x, const Lattice& y);  // index = i*y.n+j
};

bool strong_set_order_leq(const std::vector<std::size_t>& Y,
                          const std::vector<std::size_t>& Z, const Lattice& lat);

struct LatticeInstance {
    Poset a1;
    Lattice a2;
    std::vector<std::vector<std::size_t>> menu;  // per a1, sorted a2 indices
    std::vector<double> theta;                   // strictly increasing
    std::size_t theta_star = 0;
    std::size_t n_states = 1;
    double gamma = 0.5;
    std::vector<double> w_;  // [a1][a2][theta][state]

    double w(std::size_t i, std::size_t j, std::size_t t, std::size_t s) const {
        return w_[((i * a2.n + j) * theta.size() + t) * n_states + s];
    }
    double& w(std::size_t i, std::size_t j, std::size_t t, std::size_t s) {
        return w_[((i * a2.n + j) * theta.size() + t) * n_states + s];
    }
    void validate() const;
};

struct Violation {
    std::string what;  // witness tuple, human-readable
};

std::optional<Violation> increasing_differences_violation(const LatticeInstance&);
std::optional<Violation> supermodularity_violation(const LatticeInstance&);
bool has_increasing_differences(const LatticeInstance&);
bool is_supermodular_in_a2_theta(const LatticeInstance&);
bool menu_monotone(const LatticeInstance&);

enum class Verdict { Holds, Violated, Inapplicable };

struct Theorem2Report {
    Verdict verdict = Verdict::Inapplicable;
    std::vector<std::size_t> classical;       // a2 indices
    std::vector<std::size_t> rationalizing;   // a2 indices
    std::vector<std::size_t> witness_theta;   // per rationalizing a2
    std::string detail;                       // witness text on violation
    bool lemma5_ok = true;  // low-theta rationalizing pairs land in material argmax
};

// checks the comparative-statics claim at (state, chosen a1); requires the
// instance to pass the three hypothesis predicates.
Theorem2Report check_theorem2(const LatticeInstance&, std::size_t state,
                              std::size_t a1_bar);

enum class Construction { SumOfMonotoneProducts, Separable };

struct SizeParams {
    std::size_t n_a1 = 3;
    std::size_t n_a2 = 4;
    bool a2_grid = false;  // true: A2 = 2x3 grid
    std::size_t n_theta = 4;
    std::size_t n_states = 2;
};

LatticeInstance random_instance(std::uint64_t seed, const SizeParams& sz,
                                Construction c);

// order-negated copy (flips A1, A2, Theta); used by the duality property
LatticeInstance dual(const LatticeInstance&);

}  // namespace epr::lattice
