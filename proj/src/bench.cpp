#include "dimin/bench.h"

#include "dimin/error.h"
#include "dimin/grounder.h"
#include "dimin/semantics.h"
#include "dimin/transform.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

namespace dimin {

std::string_view to_string(Family family) noexcept {
    switch (family) {
    case Family::coloring: return "coloring";
    case Family::hamiltonian: return "hc";
    case Family::stable_marriage: return "sm";
    }
    return "coloring";
}

std::string_view to_string(HeuristicMode mode) noexcept {
    switch (mode) {
    case HeuristicMode::f1_partial: return "f1";
    case HeuristicMode::f2_value_subset: return "f2";
    case HeuristicMode::f3_neighborhood: return "f3";
    }
    return "f1";
}

Family parse_family(std::string_view text) {
    if (text == "coloring") return Family::coloring;
    if (text == "hc" || text == "hamiltonian") return Family::hamiltonian;
    if (text == "sm" || text == "stable_marriage") return Family::stable_marriage;
    throw Error("unknown benchmark family: " + std::string(text));
}

HeuristicMode parse_heuristic(std::string_view text) {
    if (text == "f1" || text == "f1_partial") return HeuristicMode::f1_partial;
    if (text == "f2" || text == "f2_value_subset") return HeuristicMode::f2_value_subset;
    if (text == "f3" || text == "f3_neighborhood") return HeuristicMode::f3_neighborhood;
    throw Error("unknown heuristic: " + std::string(text));
}

double default_density(Family family) noexcept {
    switch (family) {
    case Family::coloring: return 0.3;
    case Family::hamiltonian: return 0.1;
    case Family::stable_marriage: return 1.0;
    }
    return 0.3;
}

double default_param(HeuristicMode mode) noexcept {
    switch (mode) {
    case HeuristicMode::f1_partial: return 1.0 / 3.0;
    case HeuristicMode::f2_value_subset: return 10;
    case HeuristicMode::f3_neighborhood: return 8;
    }
    return 1;
}

HeuristicMode paired_heuristic(Family family) noexcept {
    switch (family) {
    case Family::coloring: return HeuristicMode::f1_partial;
    case Family::hamiltonian: return HeuristicMode::f3_neighborhood;
    case Family::stable_marriage: return HeuristicMode::f2_value_subset;
    }
    return HeuristicMode::f1_partial;
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }

bool SplitMix64::chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

namespace {

template <class T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
}

const char* const coloring_rules =
    "color(V,C) :- vertex(V), col(C), not othercolor(V,C).\n"
    "othercolor(V,C) :- vertex(V), col(C), col(C1), C != C1, color(V,C1).\n"
    ":- arc(V1,V2), col(C), color(V1,C), color(V2,C).\n";

const char* const hamiltonian_rules =
    "hc(X,Y) :- link(X,Y,K), not nhc(X,Y).\n"
    "nhc(X,Y) :- link(X,Y,K), not hc(X,Y).\n"
    ":- hc(X,Y), hc(X,Z), Y != Z.\n"
    ":- hc(X,Y), hc(Z,Y), X != Z.\n"
    "has_out(X) :- hc(X,Y).\n"
    ":- vertex(X), not has_out(X).\n"
    "reach(X) :- start(X).\n"
    "reach(Y) :- reach(X), hc(X,Y).\n"
    ":- vertex(X), not reach(X).\n";

const char* const marriage_rules =
    "match(M,W) :- prefm(M,W,R), not nmatch(M,W).\n"
    "nmatch(M,W) :- prefm(M,W,R), not match(M,W).\n"
    ":- match(M,W1), match(M,W2), W1 != W2.\n"
    ":- match(M1,W), match(M2,W), M1 != M2.\n"
    "matched(M) :- match(M,W).\n"
    ":- man(M), not matched(M).\n"
    "better_m(M,W) :- match(M,W2), prefm(M,W,R1), prefm(M,W2,R2), R1 < R2.\n"
    "better_w(W,M) :- match(M2,W), prefw(W,M,R1), prefw(W,M2,R2), R1 < R2.\n"
    ":- better_m(M,W), better_w(W,M).\n";

const char* const color_names[3] = {"r", "b", "g"};

ConstantSet within(const Program& program, ConstantSet wanted) {
    auto hu = herbrand_universe(program);
    ConstantSet out;
    std::set_intersection(wanted.begin(), wanted.end(), hu.begin(), hu.end(), std::inserter(out, out.end()));
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

Program gen_coloring(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    std::ostringstream out;
    for (std::size_t v = 1; v <= n; ++v) out << "vertex(" << v << ").\n";
    for (auto [a, b] : edges) out << "arc(" << a << ',' << b << ").\n";
    for (auto c : color_names) out << "col(" << c << ").\n";
    out << coloring_rules;
    return parse_program(out.str());
}

Program gen_coloring(std::size_t n, double p, std::uint64_t seed) {
    if (n < 1 || p < 0 || p > 1) throw Error("gen_coloring needs n >= 1 and 0 <= p <= 1");
    SplitMix64 rng(seed);
    std::vector<int> planted(n + 1);
    for (std::size_t v = 1; v <= n; ++v) planted[v] = static_cast<int>(rng.below(3));
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j)
            if (rng.chance(p) && planted[i] != planted[j]) edges.emplace_back(int(i), int(j));
    return gen_coloring(n, edges);
}

Program gen_hamiltonian(std::size_t n, double p, std::uint64_t seed) {
    if (n < 3) throw Error("gen_hamiltonian needs n >= 3");
    SplitMix64 rng(seed);
    std::ostringstream out;
    for (std::size_t v = 0; v < n; ++v) out << "vertex(" << v << ").\n";
    out << "start(0).\n";
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t j = 1; j < n; ++j)
            if (j == 1 || rng.chance(p)) out << "link(" << v << ',' << (v + j) % n << ",d" << j << ").\n";
    out << hamiltonian_rules;
    return parse_program(out.str());
}

std::vector<int> gale_shapley(const MarriageInstance& instance) {
    const std::size_t n = instance.men.size();
    std::vector<std::vector<std::size_t>> rank(n, std::vector<std::size_t>(n));
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t i = 0; i < n; ++i) rank[w][instance.women[w][i]] = i;
    std::vector<int> wife(n, -1), husband(n, -1);
    std::vector<std::size_t> next(n, 0);
    std::vector<int> free_men(n);
    std::iota(free_men.rbegin(), free_men.rend(), 0);
    while (!free_men.empty()) {
        int m = free_men.back();
        int w = instance.men[m][next[m]++];
        if (husband[w] < 0) {
            free_men.pop_back();
            husband[w] = m, wife[m] = w;
        } else if (rank[w][m] < rank[w][husband[w]]) {
            free_men.back() = husband[w];
            wife[husband[w]] = -1;
            husband[w] = m, wife[m] = w;
        }
    }
    return wife;
}

bool is_stable(const MarriageInstance& instance, const std::vector<int>& matching) {
    const std::size_t n = instance.men.size();
    std::vector<int> husband(n, -1);
    for (std::size_t m = 0; m < n; ++m) {
        if (matching[m] < 0 || husband[matching[m]] >= 0) return false;
        husband[matching[m]] = int(m);
    }
    auto position = [](const std::vector<int>& order, int x) { return std::find(order.begin(), order.end(), x) - order.begin(); };
    for (std::size_t m = 0; m < n; ++m)
        for (int w : instance.men[m]) {
            if (w == matching[m]) break;
            if (position(instance.women[w], int(m)) < position(instance.women[w], husband[w])) return false;
        }
    return true;
}

MarriageInstance random_marriage(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw Error("stable marriage needs n >= 1");
    SplitMix64 rng(seed);
    std::vector<int> planted(n);
    std::iota(planted.begin(), planted.end(), 0);
    shuffle(planted, rng);
    MarriageInstance inst;
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<int> rest;
        for (std::size_t w = 0; w < n; ++w)
            if (int(w) != planted[m]) rest.push_back(int(w));
        shuffle(rest, rng);
        rest.insert(rest.begin(), planted[m]);
        inst.men.push_back(std::move(rest));
    }
    for (std::size_t w = 0; w < n; ++w) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        shuffle(order, rng);
        inst.women.push_back(std::move(order));
    }
    return inst;
}

Program encode_marriage(const MarriageInstance& instance) {
    const std::size_t n = instance.men.size();
    std::ostringstream out;
    for (std::size_t i = 1; i <= n; ++i) out << "man(m" << i << ").\n";
    for (std::size_t i = 1; i <= n; ++i) out << "woman(w" << i << ").\n";
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t r = 0; r < n; ++r) out << "prefm(m" << m + 1 << ",w" << instance.men[m][r] + 1 << ',' << r + 1 << ").\n";
    for (std::size_t w = 0; w < n; ++w)
        for (std::size_t r = 0; r < n; ++r)
            out << "prefw(w" << w + 1 << ",m" << instance.women[w][r] + 1 << ',' << n + r + 1 << ").\n";
    out << marriage_rules;
    return parse_program(out.str());
}

Program gen_stable_marriage(std::size_t n, std::uint64_t seed) {
    auto inst = random_marriage(n, seed);
    auto certificate = gale_shapley(inst);
    if (!is_stable(inst, certificate)) throw Error("deferred acceptance produced an unstable matching");
    return encode_marriage(inst);
}

Program generate(const InstanceSpec& spec) {
    double p = spec.density.value_or(default_density(spec.family));
    switch (spec.family) {
    case Family::coloring: return gen_coloring(spec.n, p, spec.seed);
    case Family::hamiltonian: return gen_hamiltonian(spec.n, p, spec.seed);
    case Family::stable_marriage: return gen_stable_marriage(spec.n, spec.seed);
    }
    throw Error("unknown family");
}

Diminution build_diminution(const Program& program, const InstanceSpec& spec, const HeuristicSpec& heuristic) {
    if (heuristic.mode != paired_heuristic(spec.family))
        throw IncompatibleHeuristicError(std::string(to_string(heuristic.mode)) + " does not apply to family " +
                                         std::string(to_string(spec.family)));
    const double param = heuristic.param.value_or(default_param(heuristic.mode));
    const std::size_t n = spec.n;
    ConstantSet keep;
    switch (heuristic.mode) {
    case HeuristicMode::f1_partial: {
        auto kept = static_cast<std::size_t>(std::ceil(param * double(n) - 1e-9));
        for (std::size_t v = 1; v <= std::min(kept, n); ++v) keep.insert(std::to_string(v));
        for (auto c : color_names) keep.insert(c);
        break;
    }
    case HeuristicMode::f2_value_subset: {
        auto window = static_cast<std::size_t>(param);
        for (std::size_t i = 1; i <= n; ++i) {
            keep.insert("m" + std::to_string(i));
            keep.insert("w" + std::to_string(i));
            keep.insert(std::to_string(n + i));
            if (i <= window) keep.insert(std::to_string(i));
        }
        break;
    }
    case HeuristicMode::f3_neighborhood: {
        auto k = static_cast<std::size_t>(param);
        for (std::size_t v = 0; v < n; ++v) keep.insert(std::to_string(v));
        for (std::size_t j = 1; j < n; ++j) {
            std::size_t d = (j + n - 1) % n;
            if (std::min(d, n - d) <= k) keep.insert("d" + std::to_string(j));
        }
        break;
    }
    }
    return Diminution{within(program, std::move(keep)), {}};
}

RunStats run_pipeline(const Program& program, const ConstantSet& domain, const BenchOptions& options) {
    RunStats stats;
    Deadline deadline = options.budget_s ? Deadline::after(std::chrono::duration<double>(*options.budget_s)) : Deadline{};
    auto start = std::chrono::steady_clock::now();
    auto guarded = guard(program, domain);
    GroundOptions g;
    g.deadline = deadline;
    auto grounded = ground(guarded.program, g);
    auto stripped = strip_dom(grounded, dom_facts(grounded, guarded.dom_predicate));
    stats.ground_time_s = seconds_since(start);
    stats.ground_rules = stripped.rules.size();
    stats.ground_bytes = stripped.canonical_text().size();
    stats.timed_out = !grounded.complete;
    if (stats.timed_out) {
        stats.found = "timeout";
        return stats;
    }
    if (!options.solve) return stats;
    start = std::chrono::steady_clock::now();
    try {
        SolveOptions s;
        s.max_models = 1;
        s.atom_limit = options.atom_limit;
        s.deadline = deadline;
        stats.found = answer_sets(stripped, s).empty() ? "no" : "yes";
    } catch (const TimeoutError&) {
        stats.found = "timeout";
        stats.timed_out = true;
    } catch (const SizeGuardError&) {
        stats.found = "skipped";
    }
    stats.solve_time_s = seconds_since(start);
    return stats;
}

std::vector<RunStats> run_benchmark(const std::vector<InstanceSpec>& specs, const std::vector<HeuristicSpec>& heuristics,
                                    const BenchOptions& options) {
    std::vector<RunStats> rows;
    for (const auto& spec : specs) {
        std::optional<Program> program;
        std::optional<RunStats> full;
        for (const auto& h : heuristics) {
            if (h.mode != paired_heuristic(spec.family)) continue;
            if (!program) program = generate(spec);
            if (!full) {
                full = run_pipeline(*program, herbrand_universe(*program), options);
                full->mode = "full";
                full->family = spec.family, full->n = spec.n, full->seed = spec.seed;
                rows.push_back(*full);
            }
            auto dim = build_diminution(*program, spec, h);
            auto row = run_pipeline(*program, dim.constants, options);
            row.mode = std::string(to_string(h.mode));
            row.family = spec.family, row.n = spec.n, row.seed = spec.seed;
            row.reduction_ratio = row.ground_bytes ? double(full->ground_bytes) / double(row.ground_bytes) : 0.0;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string to_tsv(const std::vector<RunStats>& rows) {
    std::ostringstream out;
    out << stats_header << '\n';
    for (const auto& r : rows) {
        out << to_string(r.family) << '\t' << r.n << '\t' << r.seed << '\t' << r.mode << '\t' << std::fixed
            << std::setprecision(6) << r.ground_time_s << '\t' << r.ground_rules << '\t' << r.ground_bytes << '\t'
            << r.solve_time_s << '\t' << r.found << '\t' << std::setprecision(3) << r.reduction_ratio << '\n';
        out.unsetf(std::ios::floatfield);
    }
    return out.str();
}

std::vector<Aggregate> aggregate(const std::vector<RunStats>& rows) {
    std::map<std::pair<Family, std::string>, Aggregate> groups;
    for (const auto& r : rows) {
        auto& a = groups[{r.family, r.mode}];
        a.family = r.family, a.mode = r.mode;
        ++a.runs;
        a.mean_ground_time_s += r.ground_time_s;
        a.mean_ground_bytes += double(r.ground_bytes);
        a.timeout_rate += r.timed_out ? 1.0 : 0.0;
    }
    std::vector<Aggregate> out;
    for (auto& [key, a] : groups) {
        a.mean_ground_time_s /= double(a.runs);
        a.mean_ground_bytes /= double(a.runs);
        a.timeout_rate /= double(a.runs);
        out.push_back(a);
    }
    return out;
}

} // namespace dimin
