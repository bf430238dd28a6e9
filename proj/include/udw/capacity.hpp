// capacity.hpp: entropies, Holevo chi and the classical capacity of the detector channel
//
// The channel is entanglement breaking, so its classical capacity equals the
// single-letter Holevo information. All entropies are in bits.

#pragma once

#include <cstddef>
#include <vector>

#include "udw/channel.hpp"

namespace udw {

inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr std::size_t kDefaultMaxMembers = 4;

// -x log2 x - (1-x) log2 (1-x) with 0 log 0 = 0.
double binary_entropy(double x);

// Von Neumann entropy of a qubit density matrix.
double von_neumann_entropy(const Matrix2cd& rho);
double von_neumann_entropy(const ChannelOutput& out);

struct Ensemble {
    struct Member {
        double probability{0.0};
        QubitState state;
    };
    std::vector<Member> members;

    std::size_t size() const { return members.size(); }
    QubitState average() const;
    void validate(std::size_t max_members = kDefaultMaxMembers) const;
};

// S(E(sum p_m rho_m)) - sum p_m S(E(rho_m)).
double holevo_chi(const QubitChannel& channel, const Ensemble& ensemble);
double holevo_chi(const ChannelParams& params, const Ensemble& ensemble);

// H(1/2 + nu r/2 |cos 2Delta|) - H(1/2 + nu r/2): the capacity for Bob's Bloch
// length r_b once his phase is tuned so that P = 0 (r_b = 1 covers Bob in |0>).
double capacity_closed_form(double nu_b, double r_b, double delta_ab);

// A phase_b in [0, pi) with x_B cos(phase_b) - y_B sin(phase_b) = 0; 0 when x_B = y_B = 0.
double tune_bob_phase(const QubitState& bob);

// Two equiprobable antipodal equatorial states aligned with Alice's monopole.
Ensemble optimal_ensemble(double phase_a);

struct OptimizerConfig {
    int polar_steps{24};
    int azimuth_steps{48};
    int simplex_denominator{16};
    int refinement_rounds{3};
    std::size_t max_members{kDefaultMaxMembers};
    unsigned threads{1};
};

struct CapacityResult {
    double c_closed{0.0};
    double c_bruteforce{0.0};
    Ensemble best_ensemble;
    double q_ea_lower{0.0};     // entanglement-assisted quantum capacity >= C/2
    double q_unassisted{0.0};   // zero for entanglement-breaking channels
    double nu_eff{0.0};         // nu_B * r_B
    bool bob_tuned{true};       // |P| < 1e-12, where c_closed is the optimum
    std::size_t evaluations{0};
    double gap{0.0};            // |c_closed - c_bruteforce|
};

// Closed-form capacity only; c_bruteforce, gap and evaluations stay at 0.
CapacityResult capacity_closed(const ChannelParams& params);

// Maximizes Holevo chi over ensembles of up to max_members pure states: an
// exhaustive pair search on the Bloch-sphere grid and probability simplex,
// greedy growth to max_members, then coordinate refinement with step halving.
// The optimum is independent of the thread count.
CapacityResult capacity_bruteforce(const ChannelParams& params, const OptimizerConfig& config = {});

struct BobPhaseProbe {
    double phase_b{0.0};
    double c_bruteforce{0.0};
};

// Brute-force capacity across `count` evenly spaced Bob phases in [0, pi).
std::vector<BobPhaseProbe> probe_bob_phases(const ChannelParams& params, int count,
                                            const OptimizerConfig& config = {});

}  // namespace udw
