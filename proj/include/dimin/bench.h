#pragma once
// Benchmark instance generators, heuristic diminution builders and the
// full-versus-diminished grounding harness.

#include "dimin/ast.h"
#include "dimin/diminution.h"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dimin {

enum class Family { coloring, hamiltonian, stable_marriage };
enum class HeuristicMode { f1_partial, f2_value_subset, f3_neighborhood };

std::string_view to_string(Family family) noexcept;
std::string_view to_string(HeuristicMode mode) noexcept;
// Accepts the long names and the CLI short forms hc, sm, f1, f2, f3.
Family        parse_family(std::string_view text);
HeuristicMode parse_heuristic(std::string_view text);

struct InstanceSpec {
    Family                family{Family::coloring};
    std::size_t           n{0};
    std::optional<double> density;  // edge or chord probability; family default when absent
    std::uint64_t         seed{0};
};

struct HeuristicSpec {
    HeuristicMode mode{HeuristicMode::f1_partial};
    // f1: fraction of vertices kept, f2: rank window width, f3: offset radius k.
    std::optional<double> param;
};

double default_density(Family family) noexcept;
double default_param(HeuristicMode mode) noexcept;
// The mode each family is paired with.
HeuristicMode paired_heuristic(Family family) noexcept;

// Deterministic 64-bit generator with platform-independent output.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);  // uniform-ish in [0, bound)
    bool          chance(double p);

private:
    std::uint64_t state_;
};

// Three-coloring with a planted coloring: an edge i<j is drawn with
// probability p and kept only when the planted colors of i and j differ.
Program gen_coloring(std::size_t n, double p, std::uint64_t seed);
// The same encoding over an explicit vertex count and edge list.
Program gen_coloring(std::size_t n, const std::vector<std::pair<int, int>>& edges);

// Directed ring 0 -> 1 -> ... -> n-1 -> 0 plus a chord from i to i+j (mod n)
// for each offset j >= 2 with probability p. Arcs carry their offset as a
// constant d<j>.
Program gen_hamiltonian(std::size_t n, double p, std::uint64_t seed);

struct MarriageInstance {
    std::vector<std::vector<int>> men;    // men[m] = women in order of preference
    std::vector<std::vector<int>> women;  // women[w] = men in order of preference
};
// Men-proposing deferred acceptance; result[m] is the woman matched to m.
std::vector<int> gale_shapley(const MarriageInstance& instance);
bool is_stable(const MarriageInstance& instance, const std::vector<int>& matching);
// Seeded preferences in which every man's first choice is distinct, so the
// men-optimal stable matching gives each man his top choice.
MarriageInstance random_marriage(std::size_t n, std::uint64_t seed);
// Men rank women with 1..n, women rank men with n+1..2n so that a window
// over the men's ranks never touches the women's.
Program encode_marriage(const MarriageInstance& instance);
Program gen_stable_marriage(std::size_t n, std::uint64_t seed);

Program generate(const InstanceSpec& spec);

// Throws IncompatibleHeuristicError when the mode does not fit the family.
// The result is always a subset of the program's Herbrand universe.
Diminution build_diminution(const Program& program, const InstanceSpec& spec, const HeuristicSpec& heuristic);

struct RunStats {
    Family        family{Family::coloring};
    std::size_t   n{0};
    std::uint64_t seed{0};
    std::string   mode;  // "full" or the heuristic name
    double        ground_time_s{0};
    std::size_t   ground_rules{0};
    std::size_t   ground_bytes{0};
    double        solve_time_s{0};
    std::string   found{"skipped"};  // yes, no, timeout or skipped
    double        reduction_ratio{1};
    bool          timed_out{false};
};

struct BenchOptions {
    std::optional<double> budget_s;  // per pipeline
    bool                  solve{false};
    std::size_t           atom_limit{1u << 20};
};

// One grounding pipeline: guard over the domain, ground, strip the guards.
RunStats run_pipeline(const Program& program, const ConstantSet& domain, const BenchOptions& options);

// For every spec and every heuristic compatible with its family: a "full"
// row over the Herbrand universe and a diminished row. Timeouts are recorded
// in the rows and never abort the batch.
std::vector<RunStats> run_benchmark(const std::vector<InstanceSpec>& specs, const std::vector<HeuristicSpec>& heuristics,
                                    const BenchOptions& options = {});

inline constexpr std::string_view stats_header =
    "family\tn\tseed\tmode\tground_time_s\tground_rules\tground_bytes\tsolve_time_s\tfound\treduction_ratio";
std::string to_tsv(const std::vector<RunStats>& rows);

struct Aggregate {
    Family      family{Family::coloring};
    std::string mode;
    std::size_t runs{0};
    double      mean_ground_time_s{0};
    double      mean_ground_bytes{0};
    double      timeout_rate{0};
};
// Means per (family, mode), sorted by family then mode.
std::vector<Aggregate> aggregate(const std::vector<RunStats>& rows);

} // namespace dimin
