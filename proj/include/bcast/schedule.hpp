#pragma once

#include <fstream>
#include <sstream>

#include "bcast/graph.hpp"
#include "json.hpp"

namespace bcast {

struct Call {
    int caller = 0;
    int callee = 0;
    friend bool operator==(const Call& a, const Call& b) {
        return a.caller == b.caller && a.callee == b.callee;
    }
};

/// Round-by-round list of calls realizing a broadcast from `origin`.
struct Schedule {
    int origin = 0;
    std::vector<std::vector<Call>> rounds;

    int round_count() const { return static_cast<int>(rounds.size()); }
    int call_count() const {
        int c = 0;
        for (const auto& r : rounds) c += static_cast<int>(r.size());
        return c;
    }
};

struct ScheduleViolation {
    int round = 0;  // 1-based; 0 when no specific call is at fault
    std::optional<Call> call;
    std::string rule;

    std::string describe() const {
        std::string s = "round " + std::to_string(round);
        if (call) s += " call " + std::to_string(call->caller) + "->" + std::to_string(call->callee);
        return s + ": " + rule;
    }
};

struct ValidationResult {
    bool ok = false;
    int completion_round = 0;  // meaningful when ok
    std::optional<ScheduleViolation> violation;
};

/// Replays the schedule against the telephone-model rules: every call runs
/// along an edge from a vertex informed before the round to a vertex not yet
/// informed, with every caller and callee used at most once per round.
/// Returns the first round after which all vertices are informed, or the
/// violated rule. Calls to already-informed vertices are violations, not
/// no-ops.
inline ValidationResult validate_schedule(const Graph& g, const Schedule& sched) {
    ValidationResult res;
    int n = g.vertex_count();
    if (sched.origin < 0 || sched.origin >= n)
        throw contract_error("validate_schedule: origin out of range");

    std::vector<bool> informed(n, false);
    informed[sched.origin] = true;
    int informed_count = 1;
    int completion = 0;

    for (int r = 0; r < sched.round_count(); ++r) {
        std::vector<bool> called(n, false), targeted(n, false);
        for (const Call& c : sched.rounds[r]) {
            ScheduleViolation v;
            v.round = r + 1;
            v.call = c;
            if (c.caller < 0 || c.caller >= n || c.callee < 0 || c.callee >= n) {
                v.rule = "call endpoint out of range";
            } else if (!informed[c.caller]) {
                v.rule = "caller is not informed before the round";
            } else if (informed[c.callee]) {
                v.rule = "callee is already informed";
            } else if (!g.has_edge(c.caller, c.callee)) {
                v.rule = "no such edge";
            } else if (called[c.caller]) {
                v.rule = "caller makes two calls in one round";
            } else if (targeted[c.callee]) {
                v.rule = "callee receives two calls in one round";
            } else {
                called[c.caller] = true;
                targeted[c.callee] = true;
                continue;
            }
            res.violation = v;
            return res;
        }
        for (int v = 0; v < n; ++v)
            if (targeted[v]) {
                informed[v] = true;
                ++informed_count;
            }
        if (informed_count == n && completion == 0) completion = r + 1;
    }

    if (informed_count != n) {
        ScheduleViolation v;
        v.round = sched.round_count();
        v.rule = std::to_string(n - informed_count) + " vertices remain uninformed";
        res.violation = v;
        return res;
    }
    res.ok = true;
    res.completion_round = completion;
    return res;
}

// --- serialization -----------------------------------------------------

/// CSV with header round,caller,callee, rows sorted by round then caller.
inline std::string schedule_to_csv(const Schedule& sched) {
    std::ostringstream os;
    os << "round,caller,callee\n";
    for (int r = 0; r < sched.round_count(); ++r) {
        std::vector<Call> calls = sched.rounds[r];
        std::sort(calls.begin(), calls.end(),
                  [](const Call& a, const Call& b) { return a.caller < b.caller; });
        for (const Call& c : calls) os << (r + 1) << ',' << c.caller << ',' << c.callee << '\n';
    }
    return os.str();
}

inline nlohmann::ordered_json schedule_to_json(const Schedule& sched) {
    nlohmann::ordered_json j;
    j["origin"] = sched.origin;
    auto rounds = nlohmann::ordered_json::array();
    for (const auto& r : sched.rounds) {
        std::vector<Call> calls = r;
        std::sort(calls.begin(), calls.end(),
                  [](const Call& a, const Call& b) { return a.caller < b.caller; });
        auto jr = nlohmann::ordered_json::array();
        for (const Call& c : calls) jr.push_back({c.caller, c.callee});
        rounds.push_back(std::move(jr));
    }
    j["rounds"] = std::move(rounds);
    return j;
}

/// Parses the CSV form. The origin is taken from the first listed call's
/// caller; an empty schedule gets origin 0.
inline Schedule schedule_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw contract_error("schedule csv: empty file");
    // tolerate trailing \r
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "round,caller,callee")
        throw contract_error("schedule csv: expected header 'round,caller,callee'");
    Schedule sched;
    bool have_origin = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f1, f2, f3;
        if (!std::getline(ls, f1, ',') || !std::getline(ls, f2, ',') || !std::getline(ls, f3))
            throw contract_error("schedule csv: malformed row '" + line + "'");
        int round, caller, callee;
        try {
            round = std::stoi(f1);
            caller = std::stoi(f2);
            callee = std::stoi(f3);
        } catch (const std::exception&) {
            throw contract_error("schedule csv: malformed row '" + line + "'");
        }
        if (round < 1) throw contract_error("schedule csv: rounds are 1-based");
        if (round > 1'000'000) throw contract_error("schedule csv: round number too large");
        if (sched.round_count() < round) sched.rounds.resize(round);
        sched.rounds[round - 1].push_back({caller, callee});
        if (!have_origin) {
            sched.origin = caller;
            have_origin = true;
        }
    }
    return sched;
}

inline Schedule schedule_from_json_text(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        Schedule sched;
        sched.origin = j.at("origin").get<int>();
        for (const auto& jr : j.at("rounds")) {
            std::vector<Call> calls;
            for (const auto& jc : jr) {
                if (!jc.is_array() || jc.size() != 2)
                    throw contract_error("schedule json: bad call entry");
                calls.push_back({jc[0].get<int>(), jc[1].get<int>()});
            }
            sched.rounds.push_back(std::move(calls));
        }
        return sched;
    } catch (const nlohmann::json::exception& e) {
        throw contract_error(std::string("schedule json: ") + e.what());
    }
}

inline Schedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw contract_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return schedule_from_json_text(text);
    return schedule_from_csv(text);
}

}  // namespace bcast
