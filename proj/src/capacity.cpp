#include "udw/capacity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

namespace udw {

double binary_entropy(double x) {
    if (!(x >= -kProbabilityTolerance && x <= 1.0 + kProbabilityTolerance)) {
        std::ostringstream os;
        os << "binary entropy argument " << x << " outside [0, 1]";
        throw DomainError(os.str());
    }
    x = std::clamp(x, 0.0, 1.0);
    auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
    return term(x) + term(1.0 - x);
}

double von_neumann_entropy(const Matrix2cd& rho) {
    const double tol = kProbabilityTolerance;
    if (!rho.allFinite()) throw DomainError("density matrix must be finite");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) throw DomainError("density matrix must be Hermitian");
    const double trace = rho.trace().real();
    if (std::abs(trace - 1.0) > tol) throw DomainError("density matrix must have unit trace");
    const double diff = (rho(0, 0) - rho(1, 1)).real();
    const double gap = std::sqrt(diff * diff + 4.0 * std::norm(rho(0, 1)));
    const double p_minus = 0.5 * (trace - gap);
    if (p_minus < -tol) throw DomainError("density matrix must be positive semidefinite");
    return binary_entropy(0.5 * (1.0 + gap));
}

double von_neumann_entropy(const ChannelOutput& out) {
    return binary_entropy(out.p_plus);
}

QubitState Ensemble::average() const {
    Vector3d r = Vector3d::Zero();
    for (const auto& m : members) r += m.probability * m.state.bloch;
    return QubitState{r};
}

void Ensemble::validate(std::size_t max_members) const {
    if (members.empty() || members.size() > max_members) {
        std::ostringstream os;
        os << "ensemble must have between 1 and " << max_members << " members, got " << members.size();
        throw DomainError(os.str());
    }
    double total = 0.0;
    for (const auto& m : members) {
        if (!(m.probability >= 0.0)) throw DomainError("ensemble probabilities must be non-negative");
        m.state.validate();
        total += m.probability;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) throw DomainError("ensemble probabilities must sum to 1");
}

double holevo_chi(const QubitChannel& channel, const Ensemble& ensemble) {
    ensemble.validate(std::max(ensemble.size(), kDefaultMaxMembers));
    double conditional = 0.0;
    for (const auto& m : ensemble.members) conditional += m.probability * von_neumann_entropy(channel.apply(m.state));
    return von_neumann_entropy(channel.apply(ensemble.average())) - conditional;
}

double holevo_chi(const ChannelParams& params, const Ensemble& ensemble) {
    return holevo_chi(QubitChannel(params), ensemble);
}

double capacity_closed_form(double nu_b, double r_b, double delta_ab) {
    if (!(nu_b >= 0.0 && nu_b <= 1.0)) throw DomainError("nu_B must lie in [0, 1]");
    if (!(r_b >= 0.0 && r_b <= 1.0 + kBlochTolerance)) throw DomainError("r_B must lie in [0, 1]");
    if (!std::isfinite(delta_ab)) throw DomainError("Delta_AB must be finite");
    const double nu_eff = nu_b * std::min(r_b, 1.0);
    return binary_entropy(0.5 + 0.5 * nu_eff * std::abs(std::cos(2.0 * delta_ab))) - binary_entropy(0.5 + 0.5 * nu_eff);
}

double tune_bob_phase(const QubitState& bob) {
    if (bob.x() == 0.0 && bob.y() == 0.0) return 0.0;
    // cos(alpha) = -y/rho, sin(alpha) = x/rho and phase + alpha = n pi.
    const double alpha = std::atan2(bob.x(), -bob.y());
    double phase = std::fmod(-alpha, std::numbers::pi);
    if (phase < 0.0) phase += std::numbers::pi;
    return phase == 0.0 ? 0.0 : phase;  // no -0
}

Ensemble optimal_ensemble(double phase_a) {
    const double c = std::cos(phase_a);
    const double s = std::sin(phase_a);
    return Ensemble{{{0.5, QubitState{c, s, 0.0}}, {0.5, QubitState{-c, -s, 0.0}}}};
}

namespace {

bool is_tuned(const QubitChannel& channel) {
    return std::abs(channel.bob_projection()) < 1e-12;
}

CapacityResult closed_part(const QubitChannel& channel) {
    const auto& p = channel.params();
    CapacityResult r;
    const double r_b = std::min(p.bob_initial.radius(), 1.0);
    r.c_closed = capacity_closed_form(p.stats.nu_b, r_b, p.stats.delta_ab);
    r.q_ea_lower = r.c_closed / 2.0;
    r.q_unassisted = 0.0;
    r.nu_eff = p.stats.nu_b * r_b;
    r.bob_tuned = is_tuned(channel);
    return r;
}

// A pure input with its channel output cached.
struct Direction {
    double polar{0.0};
    double azimuth{0.0};
    Vector3d out{Vector3d::Zero()};
    double entropy{0.0};
};

struct Member {
    Direction dir;
    double probability{0.0};
};

class ChiSearch {
public:
    ChiSearch(const QubitChannel& channel, const OptimizerConfig& config) : channel_(channel), config_(config) {}

    Direction direction(double polar, double azimuth) const {
        const ChannelOutput out = channel_.apply(QubitState::pure(polar, azimuth));
        return {polar, azimuth, out.state().bloch, binary_entropy(out.p_plus)};
    }

    double chi(const std::vector<Member>& members) {
        ++evaluations_;
        Vector3d avg = Vector3d::Zero();
        double conditional = 0.0;
        for (const auto& m : members) {
            avg += m.probability * m.dir.out;
            conditional += m.probability * m.dir.entropy;
        }
        return mixed_entropy(avg) - conditional;
    }

    static double mixed_entropy(const Vector3d& r) {
        return binary_entropy(std::min(1.0, 0.5 * (1.0 + r.norm())));
    }

    std::vector<Direction> grid() const {
        std::vector<Direction> dirs;
        const double pi = std::numbers::pi;
        for (int k = 0; k < config_.polar_steps; ++k) {
            const double polar = pi * k / config_.polar_steps;
            for (int a = 0; a < config_.azimuth_steps; ++a) {
                if (k == 0 && a > 0) break;  // a single north pole
                dirs.push_back(direction(polar, 2.0 * pi * a / config_.azimuth_steps));
            }
        }
        // South pole.
        dirs.push_back(direction(pi, 0.0));
        return dirs;
    }

    struct PairBest {
        double chi{-std::numeric_limits<double>::infinity()};
        std::size_t i{0}, j{0};
        int q{0};
    };

    // Exhaustive over unordered grid pairs and simplex weights q/denominator.
    PairBest best_pair(const std::vector<Direction>& dirs) {
        const std::size_t n = dirs.size();
        const int denom = config_.simplex_denominator;
        auto scan = [&](std::size_t i_begin, std::size_t i_end, PairBest& best, std::size_t& count) {
            for (std::size_t i = i_begin; i < i_end; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    for (int q = 1; q < denom; ++q) {
                        const double p = static_cast<double>(q) / denom;
                        const Vector3d avg = p * dirs[i].out + (1.0 - p) * dirs[j].out;
                        const double value = mixed_entropy(avg) - p * dirs[i].entropy - (1.0 - p) * dirs[j].entropy;
                        ++count;
                        if (value > best.chi) best = {value, i, j, q};
                    }
                }
            }
        };
        const unsigned threads = std::max(1u, config_.threads);
        // Chunks are fixed by index, and merged in index order with strict
        // comparison, which reproduces the sequential first-found optimum.
        const std::size_t chunks = threads == 1 ? 1 : std::min<std::size_t>(n, 8 * threads);
        std::vector<PairBest> bests(chunks);
        std::vector<std::size_t> counts(chunks, 0);
        auto bounds = [&](std::size_t c) { return std::pair{n * c / chunks, n * (c + 1) / chunks}; };
        if (threads == 1) {
            scan(0, n, bests[0], counts[0]);
        } else {
            std::vector<std::jthread> workers;
            std::atomic<std::size_t> next{0};
            for (unsigned t = 0; t < threads; ++t) {
                workers.emplace_back([&] {
                    for (std::size_t c = next++; c < chunks; c = next++) {
                        auto [b, e] = bounds(c);
                        scan(b, e, bests[c], counts[c]);
                    }
                });
            }
        }
        PairBest best;
        for (std::size_t c = 0; c < chunks; ++c) {
            evaluations_ += counts[c];
            if (bests[c].chi > best.chi) best = bests[c];
        }
        return best;
    }

    // Adds one member at a grid direction with weight q/denominator if that helps.
    bool grow(std::vector<Member>& members, double& best_chi, const std::vector<Direction>& dirs) {
        const int denom = config_.simplex_denominator;
        std::vector<Member> trial;
        std::vector<Member> winner;
        bool improved = false;
        for (const auto& d : dirs) {
            for (int q = 1; q < denom; ++q) {
                const double w = static_cast<double>(q) / denom;
                trial = members;
                for (auto& m : trial) m.probability *= (1.0 - w);
                trial.push_back({d, w});
                const double value = chi(trial);
                if (value > best_chi) {
                    best_chi = value;
                    winner = trial;
                    improved = true;
                }
            }
        }
        if (improved) members = std::move(winner);
        return improved;
    }

    void refine(std::vector<Member>& members, double& best_chi) {
        const double pi = std::numbers::pi;
        double polar_step = pi / config_.polar_steps;
        double azimuth_step = 2.0 * pi / config_.azimuth_steps;
        double prob_step = 1.0 / config_.simplex_denominator;
        for (int round = 0; round < config_.refinement_rounds; ++round) {
            polar_step /= 2.0;
            azimuth_step /= 2.0;
            prob_step /= 2.0;
            for (int sweep = 0; sweep < 200; ++sweep) {
                bool improved = false;
                for (std::size_t m = 0; m < members.size(); ++m) {
                    for (int coord = 0; coord < 2; ++coord) {
                        const double step = coord == 0 ? polar_step : azimuth_step;
                        for (double sign : {1.0, -1.0}) {
                            auto trial = members;
                            Direction& d = trial[m].dir;
                            d = coord == 0 ? direction(d.polar + sign * step, d.azimuth)
                                           : direction(d.polar, d.azimuth + sign * step);
                            const double value = chi(trial);
                            if (value > best_chi) {
                                best_chi = value;
                                members = std::move(trial);
                                improved = true;
                            }
                        }
                    }
                }
                for (std::size_t to = 0; to < members.size(); ++to) {
                    for (std::size_t from = 0; from < members.size(); ++from) {
                        if (to == from || members[from].probability < prob_step) continue;
                        auto trial = members;
                        trial[to].probability += prob_step;
                        trial[from].probability -= prob_step;
                        const double value = chi(trial);
                        if (value > best_chi) {
                            best_chi = value;
                            members = std::move(trial);
                            improved = true;
                        }
                    }
                }
                if (!improved) break;
            }
        }
    }

    std::size_t evaluations() const { return evaluations_; }

private:
    const QubitChannel& channel_;
    OptimizerConfig config_;
    std::size_t evaluations_{0};
};

}  // namespace

CapacityResult capacity_closed(const ChannelParams& params) {
    return closed_part(QubitChannel(params));
}

CapacityResult capacity_bruteforce(const ChannelParams& params, const OptimizerConfig& config) {
    if (config.polar_steps < 1 || config.azimuth_steps < 1 || config.simplex_denominator < 2 ||
        config.refinement_rounds < 0 || config.max_members < 2)
        throw DomainError("invalid optimizer configuration");
    const QubitChannel channel(params);
    CapacityResult result = closed_part(channel);

    ChiSearch search(channel, config);
    const auto dirs = search.grid();
    const auto pair = search.best_pair(dirs);
    const double p = static_cast<double>(pair.q) / config.simplex_denominator;
    std::vector<Member> members{{dirs[pair.i], p}, {dirs[pair.j], 1.0 - p}};
    double best = pair.chi;
    while (members.size() < config.max_members && search.grow(members, best, dirs)) {
    }
    search.refine(members, best);

    // Report the optimum with members of vanishing weight dropped.
    Ensemble ens;
    for (const auto& m : members)
        if (m.probability > 0.0) ens.members.push_back({m.probability, QubitState::pure(m.dir.polar, m.dir.azimuth)});
    result.best_ensemble = std::move(ens);
    result.c_bruteforce = best;
    result.evaluations = search.evaluations();
    result.gap = std::abs(result.c_closed - result.c_bruteforce);
    return result;
}

std::vector<BobPhaseProbe> probe_bob_phases(const ChannelParams& params, int count, const OptimizerConfig& config) {
    if (count < 1) throw DomainError("probe count must be positive");
    std::vector<BobPhaseProbe> probes;
    for (int k = 0; k < count; ++k) {
        ChannelParams p = params;
        p.phase_b = std::numbers::pi * k / count;
        probes.push_back({p.phase_b, capacity_bruteforce(p, config).c_bruteforce});
    }
    return probes;
}

}  // namespace udw
