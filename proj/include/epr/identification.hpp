#pragma once
// Desk-scale identification: a simulated state-contingent choice oracle over
// finite lottery spaces, probe-based recovery of the inner/outer preference
// cones, rationale-set reconstruction via hull duality, and the
// uniqueness-up-to-affine-transformation check.

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace epr::ident {

using Vec = std::vector<double>;

struct OutcomeSpace {
    std::vector<std::string> z1;
    std::vector<std::vector<std::string>> z2;  // per z1
    std::vector<std::size_t> offset;           // block offsets, size |z1|+1

    void finalize();
    std::size_t size() const { return offset.back(); }
    std::size_t blocks() const { return z1.size(); }
    std::size_t block_of(std::size_t z) const;

    static OutcomeSpace two_by_two();
};

void validate_lottery(const Vec& a);
Vec marginal(const OutcomeSpace&, const Vec& a);  // per-block mass

struct RegularRepresentation {
    OutcomeSpace space;
    double gamma = 0.5;
    Vec u;
    std::vector<Vec> extremes;

    void validate() const;  // relint, NFD, gamma in (0,1), non-singleton hull
    static RegularRepresentation id_small_1();
};

struct UnidentifiedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnderDeterminedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ChoiceOracle {
  public:
    // allow_irregular: for tests that need non-regular oracles
    explicit ChoiceOracle(RegularRepresentation rep, bool allow_irregular = false);

    const RegularRepresentation& rep() const { return rep_; }
    // indices (into A2) of the representation-objective argmax; tie_tol is
    // the indifference band (probes widen it to confirm flips above LP noise)
    std::vector<std::size_t> choose(const std::vector<Vec>& A2,
                                    const std::vector<Vec>& A1,
                                    double tie_tol = 1e-9) const;
    std::size_t query_count() const;

  private:
    RegularRepresentation rep_;
    mutable std::map<std::vector<double>, std::vector<std::size_t>> memo_;
    mutable std::size_t queries_ = 0;
    mutable std::mutex mu_;
};

// max over v in hull(extremes) of v.a - max_{b in A1} v.b  (exact, via LP)
double regret_value(const RegularRepresentation&, const Vec& a,
                    const std::vector<Vec>& A1);

// stateless variant of ChoiceOracle::choose
std::vector<std::size_t> oracle_choice(const RegularRepresentation&,
                                       const std::vector<Vec>& A2,
                                       const std::vector<Vec>& A1);

struct MattersResult {
    bool yes = false;
    Vec x, b;  // witness menus on success
};
MattersResult matters_for(const ChoiceOracle&, const Vec& p, const Vec& a,
                          std::size_t search_budget = 256,
                          std::uint64_t seed = 1);

enum class Mode { GroundTruth, Probe };

bool inner_cone_membership(const ChoiceOracle&, const Vec& a, const Vec& p,
                           Mode mode, std::size_t search_budget = 16);
// true iff p is never chosen over a (outer-cone membership)
bool outer_probe(const ChoiceOracle&, const Vec& a, const Vec& p,
                 Mode mode = Mode::Probe, std::size_t search_budget = 16);

// rank per probe from unforced binary menus; 0 = most preferred, ties share
std::vector<std::size_t> recover_material_preference(const ChoiceOracle&,
                                                     const std::vector<Vec>& probes);

// block-centered unit direction of the material utility, recovered from
// unforced binary menus by angular bisection in the marginal-tangent planes
Vec recover_material_direction(const ChoiceOracle&, const Vec& a);

std::vector<Vec> recover_rationale_cone(const ChoiceOracle&, const Vec& a,
                                        std::size_t sample_count,
                                        std::uint64_t seed,
                                        Mode mode = Mode::Probe);

struct GammaEstimate {
    double gamma = 0.0;
    std::size_t disagreements = 0;
};
GammaEstimate estimate_gamma(const ChoiceOracle&, const Vec& a,
                             const Vec& u_direction,
                             const std::vector<Vec>& cone_normals,
                             std::uint64_t seed = 2);

bool verify_affine_equivalence(const RegularRepresentation&,
                               const RegularRepresentation&);

// helpers shared with tests
Vec centered_unit(const Vec& v);                // v - mean(v), normalized
double angular_error(const Vec& a, const Vec& b);  // in radians, sign-blind

RegularRepresentation random_regular(std::uint64_t seed,
                                     std::size_t max_extremes = 4);

}  // namespace epr::ident
