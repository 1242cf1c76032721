#pragma once

#include <unordered_map>

#include "bcast/schemes.hpp"

namespace bcast {

/// Upper bound on the vertices a degree-d originator can inform within T
/// rounds: 1 + sum_{i=1..min(d,T)} 2^{T-i}.
inline std::uint64_t max_informable(int d, int T) {
    if (d < 0 || T < 0) throw contract_error("max_informable: negative argument");
    if (T > 62) throw capability_error("max_informable: T too large for 64-bit arithmetic");
    std::uint64_t total = 1;
    for (int i = 1; i <= std::min(d, T); ++i) total += std::uint64_t{1} << (T - i);
    return total;
}

/// max(ceil(log n), eccentricity of the origin); never exceeds the exact
/// broadcast time.
inline int lower_bound(const Graph& g, int origin) {
    if (origin < 0 || origin >= g.vertex_count())
        throw contract_error("lower_bound: origin out of range");
    if (g.vertex_count() == 1) return 0;
    if (!is_connected(g)) throw contract_error("lower_bound: graph is disconnected");
    return std::max(ceil_log2(static_cast<std::uint64_t>(g.vertex_count())),
                    eccentricity(g, origin));
}

struct ExactResult {
    int rounds = 0;
    Schedule schedule;
};

namespace detail {

// Branch-and-bound search over per-round caller->callee matchings with
// iterative deepening on the round budget. Prunes on the doubling bound, the
// eccentricity of the informed set, and a dominance memo per informed set.
class ExactSolver {
public:
    ExactSolver(const Graph& g, int cap) : g_(g), n_(g.vertex_count()) {
        if (cap > 64) cap = 64;
        if (n_ > cap) throw capability_error("exact solver: graph exceeds the size cap (" +
                                             std::to_string(cap) + ")");
        if (n_ == 0) throw contract_error("exact solver: empty graph");
        if (!is_connected(g_)) throw contract_error("exact solver: graph is disconnected");
        full_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        adj_mask_.assign(n_, 0);
        for (int v = 0; v < n_; ++v)
            for (int w : g_.neighbors(v)) adj_mask_[v] |= std::uint64_t{1} << w;
        dist_.reserve(n_);
        for (int v = 0; v < n_; ++v) dist_.push_back(bfs_raw(g_, v));
    }

    std::optional<Schedule> feasible(int origin, int budget) {
        if (origin < 0 || origin >= n_) throw contract_error("exact solver: origin out of range");
        budget_ = budget;
        memo_.clear();
        rounds_.clear();
        if (!dfs(std::uint64_t{1} << origin, 0)) return std::nullopt;
        Schedule sched;
        sched.origin = origin;
        sched.rounds = rounds_;
        return sched;
    }

    ExactResult exact(int origin) {
        int lo = lower_bound(g_, origin);
        for (int T = lo; T <= std::max(lo, n_ - 1); ++T) {
            auto sched = feasible(origin, T);
            if (sched) return {T, std::move(*sched)};
        }
        throw std::logic_error("exact solver: no schedule within n-1 rounds");
    }

    // Largest informed set reachable within T rounds.
    int max_reachable(int origin, int T) {
        if (origin < 0 || origin >= n_) throw contract_error("exact solver: origin out of range");
        best_reach_ = 1;
        reach_memo_.clear();
        used_by_.assign(n_, -1);
        reach_dfs(std::uint64_t{1} << origin, T);
        return best_reach_;
    }

private:
    static int popcount(std::uint64_t x) { return std::popcount(x); }

    bool dfs(std::uint64_t mask, int round) {
        if (mask == full_) return true;
        int rem = budget_ - round;
        if (rem <= 0) return false;
        int inf = popcount(mask);
        // doubling bound
        if ((static_cast<std::uint64_t>(inf) << std::min(rem, 30)) <
            static_cast<std::uint64_t>(n_))
            return false;
        // eccentricity of the informed set
        for (int v = 0; v < n_; ++v) {
            if (mask >> v & 1) continue;
            int dmin = n_;
            for (int u = 0; u < n_ && dmin > rem; ++u)
                if (mask >> u & 1) dmin = std::min(dmin, dist_[u][v]);
            if (dmin > rem) return false;
        }
        auto it = memo_.find(mask);
        if (it != memo_.end() && it->second <= round) return false;
        memo_[mask] = round;

        // near the root, a greedy completion often certifies feasibility
        if (round <= 2) {
            std::vector<bool> informed(n_);
            for (int v = 0; v < n_; ++v) informed[v] = (mask >> v) & 1;
            auto tail = greedy_rounds(g_, std::move(informed), inf);
            if (static_cast<int>(tail.size()) <= rem) {
                for (auto& r : tail) rounds_.push_back(std::move(r));
                return true;
            }
        }

        std::uint64_t uninf = full_ & ~mask;
        std::vector<int> callers;
        for (int v = 0; v < n_; ++v)
            if ((mask >> v & 1) && (adj_mask_[v] & uninf)) callers.push_back(v);
        std::vector<Call> calls;
        return match_dfs(callers, 0, mask, uninf, 0, calls, round);
    }

    // Enumerates maximal matchings from callers into the uninformed set;
    // recurses into the next round for each.
    bool match_dfs(const std::vector<int>& callers, size_t ci, std::uint64_t mask,
                   std::uint64_t uninf, std::uint64_t claimed, std::vector<Call>& calls,
                   int round) {
        if (ci == callers.size()) {
            if (calls.empty()) return false;
            // maximality: no caller left idle while a callee was available
            std::uint64_t open = uninf & ~claimed;
            if (open) {
                std::vector<bool> called(n_, false);
                for (const Call& c : calls) called[c.caller] = true;
                for (int u : callers)
                    if (!called[u] && (adj_mask_[u] & open)) return false;
            }
            rounds_.push_back(calls);
            if (dfs(mask | claimed, round + 1)) return true;
            rounds_.pop_back();
            return false;
        }
        int u = callers[ci];
        std::uint64_t options = adj_mask_[u] & uninf & ~claimed;
        std::vector<int> opts;
        for (std::uint64_t o = options; o; o &= o - 1)
            opts.push_back(std::countr_zero(o));
        // callees that open the most follow-up calls first
        std::sort(opts.begin(), opts.end(), [&](int a, int b) {
            int sa = popcount(adj_mask_[a] & uninf), sb = popcount(adj_mask_[b] & uninf);
            if (sa != sb) return sa > sb;
            return a < b;
        });
        for (int v : opts) {
            calls.push_back({u, v});
            if (match_dfs(callers, ci + 1, mask, uninf, claimed | (std::uint64_t{1} << v), calls,
                          round))
                return true;
            calls.pop_back();
        }
        // skipping u is only useful under contention; the maximality filter
        // at the leaf discards the rest
        return match_dfs(callers, ci + 1, mask, uninf, claimed, calls, round);
    }

    void reach_dfs(std::uint64_t mask, int rem) {
        int inf = popcount(mask);
        best_reach_ = std::max(best_reach_, inf);
        if (rem == 0 || mask == full_) return;
        std::uint64_t potential = std::min<std::uint64_t>(
            static_cast<std::uint64_t>(n_),
            static_cast<std::uint64_t>(inf) << std::min(rem, 30));
        if (static_cast<int>(potential) <= best_reach_) return;
        auto it = reach_memo_.find(mask);
        if (it != reach_memo_.end() && it->second >= rem) return;
        reach_memo_[mask] = rem;

        std::uint64_t uninf = full_ & ~mask;
        std::vector<int> callers;
        for (int v = 0; v < n_; ++v)
            if ((mask >> v & 1) && (adj_mask_[v] & uninf)) callers.push_back(v);
        if (callers.empty()) return;
        reach_match(callers, 0, mask, uninf, 0, rem);
    }

    void reach_match(const std::vector<int>& callers, size_t ci, std::uint64_t mask,
                     std::uint64_t uninf, std::uint64_t claimed, int rem) {
        if (ci == callers.size()) {
            if (!claimed) return;
            // only maximal matchings: a skipped caller with an open callee is
            // dominated by the matching that adds the call
            std::uint64_t open = uninf & ~claimed;
            if (open)
                for (int u : callers)
                    if ((adj_mask_[u] & open) && !caller_used(u, mask, claimed)) return;
            reach_dfs(mask | claimed, rem - 1);
            return;
        }
        int u = callers[ci];
        std::uint64_t options = adj_mask_[u] & uninf & ~claimed;
        for (std::uint64_t o = options; o; o &= o - 1) {
            int v = std::countr_zero(o);
            used_by_[v] = u;
            reach_match(callers, ci + 1, mask, uninf, claimed | (std::uint64_t{1} << v), rem);
        }
        reach_match(callers, ci + 1, mask, uninf, claimed, rem);
    }

    bool caller_used(int u, std::uint64_t, std::uint64_t claimed) const {
        for (std::uint64_t c = claimed; c; c &= c - 1)
            if (used_by_[std::countr_zero(c)] == u) return true;
        return false;
    }

    const Graph& g_;
    int n_;
    std::uint64_t full_ = 0;
    std::vector<std::uint64_t> adj_mask_;
    std::vector<std::vector<int>> dist_;
    int budget_ = 0;
    std::unordered_map<std::uint64_t, int> memo_;
    std::unordered_map<std::uint64_t, int> reach_memo_;
    std::vector<std::vector<Call>> rounds_;
    std::vector<int> used_by_;
    int best_reach_ = 1;
};

}  // namespace detail

/// Minimum rounds to inform every vertex from the origin, with a witness
/// schedule. Default size cap 24 (hard limit 64 from the subset encoding).
inline ExactResult exact_broadcast_time(const Graph& g, int origin, int cap = 24) {
    detail::ExactSolver solver(g, cap);
    return solver.exact(origin);
}

/// Feasibility at a fixed budget: cheaper than full minimization when only a
/// bound needs confirming.
inline std::optional<Schedule> broadcast_feasible(const Graph& g, int origin, int budget,
                                                  int cap = 24) {
    detail::ExactSolver solver(g, cap);
    return solver.feasible(origin, budget);
}

struct BroadcastTimeResult {
    int rounds = 0;
    int worst_origin = 0;
};

/// b(G): maximum of the per-origin exact times; origins evaluated
/// independently in id order, the smallest worst origin is reported.
inline BroadcastTimeResult broadcast_time(const Graph& g, int cap = 24) {
    detail::ExactSolver solver(g, cap);
    BroadcastTimeResult res;
    res.rounds = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = solver.exact(v).rounds;
        if (r > res.rounds) {
            res.rounds = r;
            res.worst_origin = v;
        }
    }
    return res;
}

/// Largest vertex count reachable by any valid schedule from the origin in T
/// rounds; compared against max_informable in the verification suite.
inline int max_reachable(const Graph& g, int origin, int T, int cap = 24) {
    detail::ExactSolver solver(g, cap);
    return solver.max_reachable(origin, T);
}

}  // namespace bcast
