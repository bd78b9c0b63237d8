#include "dimin/error.h"
#include "dimin/grounder.h"
#include "dimin/semantics.h"
#include "oracle.h"
#include "random_programs.h"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace dimin;
using namespace testsupport;

namespace {

GroundProgram ground_text(const std::string& text) { return from_ground_program(parse_program(text)); }

AtomId id(const GroundProgram& g, const std::string& atom) {
    auto p = parse_program(atom + ".");
    auto found = g.table().find(p.rules[0].head[0]);
    REQUIRE(found);
    return *found;
}

Interpretation set_of(const GroundProgram& g, std::initializer_list<const char*> atoms) {
    std::vector<AtomId> out;
    for (auto a : atoms) out.push_back(id(g, a));
    return make_interpretation(out);
}

// Random ground program, possibly disjunctive, over atoms a0..a<n-1>.
Program random_ground(Rng& rng, int atoms, int rules, bool disjunctive) {
    std::ostringstream out;
    std::uniform_int_distribution<int> pick(0, atoms - 1), small(0, 2);
    for (int i = 0; i < rules; ++i) {
        int heads = disjunctive && small(rng) == 0 ? 2 : (small(rng) == 0 && i % 5 == 4 ? 0 : 1);
        const char* sep = "";
        for (int h = 0; h < heads; ++h, sep = " | ") out << sep << 'a' << pick(rng);
        sep = heads ? " :- " : ":- ";
        int pos = small(rng), neg = small(rng) % 2;
        if (heads == 0 && pos + neg == 0) pos = 1;
        for (int k = 0; k < pos; ++k, sep = ", ") out << sep << 'a' << pick(rng);
        for (int k = 0; k < neg; ++k, sep = ", ") out << sep << "not a" << pick(rng);
        out << ".\n";
    }
    return parse_program(out.str());
}

std::set<AtomSet> named(const GroundProgram& g, const std::vector<Interpretation>& sets) {
    std::set<AtomSet> out;
    for (const auto& s : sets) out.insert(to_atom_set(g.table(), s));
    return out;
}

} // namespace

TEST_CASE("reduct and least model") {
    auto g = ground_text("a :- not b. b :- not a. c :- a. d :- c, not e.");
    auto reduct = gl_reduct(g, set_of(g, {"a", "c", "d"}));
    CHECK(reduct.rules.size() == 3);  // b :- not a is dropped
    CHECK(reduct.is_positive());
    CHECK(least_model(reduct) == set_of(g, {"a", "c", "d"}));
    CHECK_THROWS_AS(least_model(ground_text("a | b.")), NotNormalError);
}

TEST_CASE("minimal models of a positive disjunctive program") {
    auto g = ground_text("a | b. c :- a. c :- b.");
    auto models = minimal_models(g);
    CHECK(named(g, models) == std::set<AtomSet>{{"a", "c"}, {"b", "c"}});
}

TEST_CASE("answer sets of small classics") {
    CHECK(answer_sets(ground_text("a :- not a.")).empty());
    CHECK(answer_sets(ground_text("a :- not b. b :- not a.")).size() == 2);
    CHECK(answer_sets(ground_text("p :- q. q :- p.")).size() == 1);
    auto g = ground_text("p :- q. q :- p. p :- not r.");
    auto sets = answer_sets(g);
    REQUIRE(sets.size() == 1);
    CHECK(to_atom_set(g.table(), sets[0]) == AtomSet{"p", "q"});
    auto d = ground_text("a | b. a :- b. b :- a.");
    CHECK(named(d, answer_sets(d)) == std::set<AtomSet>{{"a", "b"}});
    SolveOptions one;
    one.max_models = 1;
    CHECK(answer_sets(ground_text("a :- not b. b :- not a."), one).size() == 1);
}

TEST_CASE("solver agrees with the brute-force oracle") {
    Rng rng(1);
    for (int i = 0; i < 400; ++i) {
        bool disjunctive = i % 2;
        auto p = random_ground(rng, 2 + i % 9, 3 + i % 12, disjunctive);
        auto g = from_ground_program(p);
        auto oracle = brute_answer_sets(to_text_rules(g));
        INFO(to_string(p));
        CHECK(to_answer_sets(g.table(), answer_sets(g)) == oracle);
        CHECK(to_answer_sets(g.table(), answer_sets_by_definition(g)) == oracle);
    }
}

TEST_CASE("subset enumeration is size guarded") {
    std::ostringstream text;
    for (int i = 0; i < 30; ++i) text << 'a' << i << " :- not b" << i << ". b" << i << " :- not a" << i << ".\n";
    auto g = ground_text(text.str());
    CHECK_THROWS_AS(answer_sets_by_definition(g, 22), SizeGuardError);
    SolveOptions tight;
    tight.atom_limit = 10;
    CHECK_THROWS_AS(answer_sets(g, tight), SizeGuardError);
}

TEST_CASE("loops and elementary loops match the oracle") {
    Rng rng(2);
    std::size_t non_elementary = 0;
    for (int i = 0; i < 300; ++i) {
        auto g = from_ground_program(random_ground(rng, 2 + i % 7, 4 + i % 10, i % 3 == 0));
        auto rules = to_text_rules(g);
        auto all = named(g, loops(g));
        auto elem = named(g, elementary_loops(g));
        CHECK(all == brute_loops(rules));
        CHECK(elem == brute_elementary_loops(rules));
        non_elementary += all.size() - elem.size();
        auto graph = positive_dependency_graph(g);
        for (const auto& l : loops(g)) CHECK(is_loop(l, graph));
    }
    CHECK(non_elementary > 0);
}

TEST_CASE("a two-atom cycle is an elementary loop") {
    auto g = ground_text("p :- q. q :- p. p :- r. r.");
    CHECK(is_elementary_loop(set_of(g, {"p", "q"}), g));
    auto lf = loop_formula(set_of(g, {"p", "q"}), g);
    CHECK(lf.supports.size() == 1);
    CHECK(satisfies_loop_formula(set_of(g, {"p", "q", "r"}), set_of(g, {"p", "q"}), g));
    auto h = ground_text("p :- q. q :- p.");
    CHECK_FALSE(satisfies_loop_formula(set_of(h, {"p", "q"}), set_of(h, {"p", "q"}), h));
}

TEST_CASE("loop formulas match the oracle") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        auto g = from_ground_program(random_ground(rng, 2 + i % 6, 4 + i % 8, false));
        auto rules = to_text_rules(g);
        auto atoms = g.atoms();
        for (const auto& l : loops(g))
            for (std::uint32_t m = 0; m < (1u << atoms.size()); m += 3) {
                std::vector<AtomId> pick;
                for (std::size_t k = 0; k < atoms.size(); ++k)
                    if (m >> k & 1) pick.push_back(atoms[k]);
                auto cand = make_interpretation(pick);
                CHECK(satisfies_loop_formula(cand, l, g) ==
                      brute_loop_formula(rules, to_atom_set(g.table(), l), to_atom_set(g.table(), cand)));
            }
    }
}

TEST_CASE("loop extension search") {
    auto g = ground_text("a. b :- a. c :- d. d :- c.");
    auto ext = find_loop_extension(g, set_of(g, {"a"}));
    REQUIRE(ext);
    CHECK(*ext == set_of(g, {"b"}));
    auto h = ground_text("x :- not y. y :- not x. :- x, z. z.");
    CHECK_FALSE(find_loop_extension(h, set_of(h, {"x"})));
}

TEST_CASE("canonical ordering of answer sets is stable") {
    auto g = ground_text("a :- not b. b :- not a. c :- not d. d :- not c.");
    auto sets = answer_sets(g);
    auto copy = sets;
    std::reverse(copy.begin(), copy.end());
    sort_canonical(g.table(), copy);
    CHECK(copy == sets);
}
