#include "reference.hpp"

#include "fturn/error.hpp"
#include "fturn/finite_turn.hpp"
#include "fturn/oracle.hpp"
#include "fturn/size_report.hpp"
#include "fturn/turn_reduction.hpp"
#include "fturn/unary.hpp"

#include <doctest.h>

using namespace fturn;

namespace {

Word unary(int t) { return Word(static_cast<std::size_t>(t), "a"); }

Word letters(const std::vector<int>& k) {
    Word w;
    for (std::size_t i = 0; i < k.size(); ++i) w.insert(w.end(), static_cast<std::size_t>(k[i]), "a" + std::to_string(i + 1));
    return w;
}

bool in_tilde(int n, const std::vector<int>& k) {
    // k_m = n_{m-1}, k_i = n_{i-1} + n_i, n_0 = 2^n, every other n_i >= 1.
    const int m = static_cast<int>(k.size());
    std::vector<int> nv(m);
    nv[m - 1] = k[m - 1];
    for (int i = m - 2; i >= 0; --i) nv[i] = k[i] - nv[i + 1];
    if (nv[0] != (1 << n)) return false;
    for (int i = 1; i < m; ++i)
        if (nv[i] < 1) return false;
    return true;
}

} // namespace

TEST_SUITE("oracle-verify") {

TEST_CASE("CYK membership") {
    const Grammar ln2 = witness_ln(2);
    CHECK(cyk_membership(ln2, unary(4)));
    CHECK_FALSE(cyk_membership(ln2, unary(3)));
    const Grammar ex = parse_grammar(ref::read_file("example.grammar"));
    CHECK(cyk_membership(to_cnf(ex), letters({2, 2, 2})));
    CHECK_THROWS_AS(cyk_membership(parse_grammar("start: S\nS -> a b\n"), {"a", "b"}), PreconditionError);
    CHECK_THROWS_AS(cyk_membership(ln2, {}), PreconditionError);
}

TEST_CASE("acceptance search returns replayable traces") {
    const PdaMachine m = witness_lprime(2);
    const SearchResult r = pda_accepts(m, unary(6));
    REQUIRE(r.verdict == Verdict::accepted);
    REQUIRE(r.trace);
    CHECK(replay_trace(m, unary(6), *r.trace));
    CHECK(r.trace->turns() == *r.turns);
    CHECK(pda_accepts(m, unary(4)).verdict == Verdict::rejected);
    CHECK_FALSE(replay_trace(m, unary(5), *r.trace));
}

TEST_CASE("step cap gives an inconclusive verdict") {
    SearchCaps caps;
    caps.max_steps = 3;
    CHECK(pda_accepts(witness_lprime(3), unary(24), caps).verdict == Verdict::inconclusive);
    const MembershipOracle oracle(witness_lprime(3), caps);
    CHECK_THROWS_AS(compare_on(oracle, oracle, {unary(24)}), InconclusiveError);
}

TEST_CASE("acceptance search agrees with CYK on the triple grammar") {
    std::mt19937 rng(5);
    int accepted = 0;
    for (int i = 0; i < 100; ++i) {
        const PdaMachine m = ref::random_pda(rng, 2 + i % 2, 4 + i % 7);
        const Grammar g = pda_to_cfg(m);
        const Word w = all_words({"a", "b"}, 5)[static_cast<std::size_t>(1 + i % 62)];
        const bool by_grammar = g.productions().empty() ? false : cyk_membership(g, w);
        const SearchResult r = pda_accepts(m, w);
        REQUIRE(r.verdict != Verdict::inconclusive);
        CHECK_MESSAGE(by_grammar == (r.verdict == Verdict::accepted), serialize_pda(m) << format_word(w));
        accepted += by_grammar;
    }
    CHECK(accepted > 0);
}

TEST_CASE("acceptance search agrees with a bounded explicit simulation") {
    std::mt19937 rng(8);
    for (int i = 0; i < 60; ++i) {
        const PdaMachine m = ref::random_pda(rng, 2 + i % 3, 5 + i % 6);
        for (const Word& w : all_words({"a", "b"}, 4)) {
            const ref::BruteResult brute = ref::brute_pda(m, w, 6);
            const SearchResult exact = min_turns(m, w);
            if (brute.accepted) {
                REQUIRE(exact.verdict == Verdict::accepted);
                CHECK(*exact.turns <= brute.min_turns);
            }
            if (exact.verdict == Verdict::accepted) CHECK(replay_trace(m, w, *exact.trace));
        }
    }
}

TEST_CASE("turn counting") {
    CHECK(count_turns({}) == 0);
    CHECK(count_turns({0, 1, 2, 1, 0}) == 1);
    CHECK(count_turns({0, 1, 1, 0, 1, 0}) == 2);
    CHECK(count_turns({0, 0, 0}) == 0);
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        std::vector<int> h{0};
        const int len = 1 + i % 20;
        for (int k = 0; k < len; ++k) {
            const int step = std::uniform_int_distribution<int>(-1, 1)(rng);
            h.push_back(std::max(0, h.back() + step));
        }
        CHECK(count_turns(h) == ref::reference_turns(h));
    }
}

TEST_CASE("turn counts of machines") {
    SUBCASE("a machine that never pushes has no turns") {
        const PdaMachine m = parse_pda(
            "states: p\ninput: a\nstack: Z0\nbottom: Z0\nstart: p\naccept: p\np a Z0 -> p stay\n");
        for (int t = 0; t <= 5; ++t) CHECK(*min_turns(m, unary(t)).turns == 0);
    }
    SUBCASE("one-turn witness needs exactly one turn on positive multiples") {
        const PdaMachine m = witness_lprime(2);
        for (int t = 0; t <= 24; ++t) {
            const SearchResult r = min_turns(m, unary(t));
            CHECK((r.verdict == Verdict::accepted) == (t % 6 == 0));
            if (r.verdict == Verdict::accepted) CHECK(*r.turns == (t == 0 ? 0 : 1));
        }
    }
    SUBCASE("a turn cap that prunes a computation leaves the verdict open") {
        const PdaMachine m = parse_pda(ref::mountain_pda_text(2));
        SearchCaps caps;
        caps.max_turns = 1;
        // a^8 needs two mountains.
        CHECK(min_turns(m, unary(8)).verdict == Verdict::accepted);
        CHECK(*min_turns(m, unary(8)).turns == 2);
        CHECK(min_turns(m, unary(8), caps).verdict == Verdict::inconclusive);
        CHECK(min_turns(m, unary(3), caps).verdict == Verdict::accepted);
    }
}

TEST_CASE("box comparisons") {
    const MembershipOracle two(witness_ln(2)), three(witness_ln(3));
    const AlphabetOrder a{"a"};
    CHECK(box_equivalence(two, two, a, 10).equal);
    const EquivalenceResult x = box_equivalence(two, three, a, 10);
    const EquivalenceResult y = box_equivalence(three, two, a, 10);
    CHECK_FALSE(x.equal);
    CHECK(*x.difference == unary(4));
    CHECK(x.in_first);
    CHECK_FALSE(x.in_second);
    CHECK(*y.difference == unary(4));
    CHECK(y.in_second);
}

TEST_CASE("word enumeration order") {
    const auto box = box_words({"a1", "a2"}, 2);
    REQUIRE(box.size() == 9);
    CHECK(box[0].empty());
    CHECK(box[1] == letters({0, 1}));
    CHECK(box[3] == letters({1, 0}));
    CHECK(box[8] == letters({2, 2}));
    const auto all = all_words({"a", "b"}, 2);
    REQUIRE(all.size() == 7);
    CHECK(all[0].empty());
    CHECK(all[1] == Word{"a"});
    CHECK(all[3] == Word{"a", "a"});
    CHECK(all[6] == Word{"b", "b"});
}

TEST_CASE("minimal unary DFA sizes") {
    // q0 -a-> q1 -a-> ... cycle of length six accepting at q0.
    std::ostringstream s;
    s << "states: q0 q1 q2 q3 q4 q5\nalphabet: a\nstart: q0\naccept: q0\n";
    for (int i = 0; i < 6; ++i) s << "q" << i << " a -> q" << (i + 1) % 6 << "\n";
    CHECK(minimal_unary_dfa_size(parse_nfa(s.str())) == 6);
    CHECK(minimal_unary_dfa_size(one_turn_pda_to_nfa(witness_lprime(2))) == 6);
    CHECK(minimal_unary_dfa_size(one_turn_pda_to_nfa(witness_lprime(4))) == 20);
    // a^3 alone: a path of four states plus a sink.
    CHECK(minimal_unary_dfa_size(parse_nfa("states: p q r s\nalphabet: a\nstart: p\naccept: s\np a -> q\nq a -> r\nr a -> s\n")) == 5);
}

TEST_CASE("doubling witness") {
    CHECK(witness_ln(1).variable_count() == 2);
    CHECK(witness_ln(4).variable_count() == 5);
    const Grammar g = witness_ln(3);
    for (int t = 1; t <= 20; ++t) CHECK(cyk_membership(g, unary(t)) == (t == 8));
    CHECK_THROWS_AS(witness_ln(0), PreconditionError);
}

TEST_CASE("multi-letter witness") {
    CHECK(witness_tilde_ln(1, 3).variable_count() == 10);
    const Grammar g = witness_tilde_ln(1, 2);
    CHECK(g.variable_count() == 6);
    const MembershipOracle oracle(g);
    for (int k1 = 0; k1 <= 8; ++k1)
        for (int k2 = 0; k2 <= 8; ++k2)
            CHECK((oracle(letters({k1, k2})) == Verdict::accepted) == in_tilde(1, {k1, k2}));
    SUBCASE("C_i derives only a_i^t a_{i+1}^t") {
        const Grammar t = witness_tilde_ln(1, 3);
        for (int i = 1; i <= 2; ++i) {
            const Grammar sub(t.variables(), t.terminals(), *t.find_variable("C" + std::to_string(i)), t.productions());
            std::set<Word> expected;
            for (int k = 1; k <= 5; ++k) {
                Word w(static_cast<std::size_t>(k), "a" + std::to_string(i));
                w.insert(w.end(), static_cast<std::size_t>(k), "a" + std::to_string(i + 1));
                expected.insert(w);
            }
            CHECK(ref::derivable_words(sub, 10) == expected);
        }
    }
    CHECK_THROWS_AS(witness_tilde_ln(1, 1), PreconditionError);
}

TEST_CASE("one-turn witness machine") {
    const PdaMachine m = witness_lprime(2);
    CHECK(m.state_count() == 5);
    CHECK(measure(m).pda_size == 5);
    CHECK(m.turn_bound() == 1);
    CHECK(pda_accepts(m, unary(12)).verdict == Verdict::accepted);
    CHECK(pda_accepts(m, unary(0)).verdict == Verdict::accepted);
    CHECK(pda_accepts(m, unary(2)).verdict == Verdict::rejected);
    CHECK(pda_accepts(m, unary(3)).verdict == Verdict::rejected);
    CHECK_THROWS_AS(witness_lprime(1), PreconditionError);
}

TEST_CASE("oracles over the three subject kinds agree") {
    const PdaMachine m = witness_lprime(2);
    const NfaMachine n = one_turn_pda_to_nfa(m);
    const Grammar g = pda_to_cfg(m);
    const MembershipOracle x(m), y(n), z(g);
    for (int t = 1; t <= 18; ++t) {
        CHECK(x(unary(t)) == y(unary(t)));
        CHECK(x(unary(t)) == z(unary(t)));
    }
}

} // TEST_SUITE
