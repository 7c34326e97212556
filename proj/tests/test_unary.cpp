#include "reference.hpp"

#include "fturn/error.hpp"
#include "fturn/nfa.hpp"
#include "fturn/oracle.hpp"
#include "fturn/size_report.hpp"
#include "fturn/unary.hpp"

#include <doctest.h>

#include <bit>

using namespace fturn;

namespace {

Word unary(int t) { return Word(static_cast<std::size_t>(t), "a"); }

// Same machine with another start state and a single accepting state.
PdaMachine rerooted(const PdaMachine& m, int start, int accept) {
    return PdaMachine(m.states(), m.input_alphabet(), m.stack_alphabet(), m.bottom(), start, {accept}, m.transitions());
}

PdaMachine random_unary(std::mt19937& rng, int states, int transitions) {
    return restrict_to_letter(ref::random_pda(rng, states, transitions), 0);
}

int floor_log2(int j) { return std::bit_width(static_cast<unsigned>(j)) - 1; }

} // namespace

TEST_SUITE("unary-turn-elim") {

TEST_CASE("one-turn segment automaton has |Q|^2 |Gamma| states") {
    const PdaMachine m = witness_lprime(3);
    const NfaMachine n = one_turn_segment_nfa(m, {0, m.bottom(), 0, std::nullopt});
    CHECK(n.state_count() == m.state_count() * m.state_count() * m.stack_count());
    CHECK(trim_nfa(n).state_count() <= n.state_count());
}

TEST_CASE("without pushes the segment language is the stay-move closure") {
    const PdaMachine m = parse_pda(
        "states: p q r\ninput: a\nstack: Z0\nbottom: Z0\nstart: p\naccept: r\n"
        "p a Z0 -> q stay\nq a Z0 -> p stay\nq eps Z0 -> r stay\n");
    const NfaMachine n = one_turn_segment_nfa(m, {0, 0, 2, std::nullopt});
    for (int t = 0; t <= 12; ++t) CHECK(nfa_accepts(n, unary(t)) == (t % 2 == 1));
}

TEST_CASE("one-turn segment languages match explicit one-turn runs") {
    std::mt19937 rng(41);
    for (int i = 0; i < 25; ++i) {
        const PdaMachine m = random_unary(rng, 2 + i % 2, 5 + i % 6);
        for (int p = 0; p < m.state_count(); ++p)
            for (int q = 0; q < m.state_count(); ++q) {
                const NfaMachine n = one_turn_segment_nfa(m, {p, m.bottom(), q, std::nullopt});
                const PdaMachine sub = rerooted(m, p, q);
                for (int t = 0; t <= 10; ++t) {
                    const SearchResult r = min_turns(sub, unary(t));
                    const bool one_turn = r.verdict == Verdict::accepted && *r.turns <= 1;
                    CHECK_MESSAGE(nfa_accepts(n, unary(t)) == one_turn, serialize_pda(m) << p << q << " t=" << t);
                }
            }
    }
}

TEST_CASE("one-turn witness machine becomes an automaton for multiples of six") {
    const PdaMachine m = witness_lprime(2);
    const NfaMachine n = one_turn_pda_to_nfa(m);
    for (int t = 0; t <= 24; ++t) CHECK(nfa_accepts(n, unary(t)) == (t % 6 == 0));
    CHECK(minimal_unary_dfa_size(n) == 6);
}

TEST_CASE("a machine that never pushes keeps its finite-control language") {
    const PdaMachine m = parse_pda(
        "states: p q\ninput: a\nstack: Z0\nbottom: Z0\nstart: p\naccept: q\nturns: 0\n"
        "p a Z0 -> q stay\nq a Z0 -> q stay\n");
    const NfaMachine n = one_turn_pda_to_nfa(m);
    for (int t = 0; t <= 8; ++t) CHECK(nfa_accepts(n, unary(t)) == (t >= 1));
}

TEST_CASE("one-turn automaton size stays within size^2 + 1") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const PdaMachine m = random_unary(rng, 1 + i % 4, 3 + i % 9).with_turn_bound(1);
        const NfaMachine n = one_turn_pda_to_nfa(m);
        const std::size_t size = measure(m).pda_size_with_bottom;
        CHECK(static_cast<std::size_t>(n.state_count()) <= size * size + 1);
        for (int t = 0; t <= 8; ++t) {
            const SearchResult r = min_turns(m, unary(t));
            CHECK(nfa_accepts(n, unary(t)) == (r.verdict == Verdict::accepted && *r.turns <= 1));
        }
    }
}

TEST_CASE("machines declared with more turns are refused by the one-turn construction") {
    CHECK_THROWS_AS(one_turn_pda_to_nfa(parse_pda(ref::mountain_pda_text(2))), PreconditionError);
    CHECK_THROWS_AS(one_turn_pda_to_nfa(parse_pda(ref::read_file("three_turn.pda"))), PreconditionError);
}

TEST_CASE("budget one agrees with the one-turn segment automaton") {
    std::mt19937 rng(23);
    for (int i = 0; i < 20; ++i) {
        const PdaMachine m = random_unary(rng, 2 + i % 2, 6 + i % 5);
        const NfaMachine one = one_turn_segment_nfa(m, {0, m.bottom(), 1, std::nullopt});
        const NfaMachine k = kturn_segment_nfa(m, {0, m.bottom(), 1, 1});
        for (int t = 0; t <= 14; ++t) CHECK(nfa_accepts(one, unary(t)) == nfa_accepts(k, unary(t)));
    }
}

TEST_CASE("two-turn segment on the mountain machine matches explicit runs") {
    const PdaMachine m = parse_pda(ref::mountain_pda_text(2));
    const int end = *m.find_state("d2");
    const NfaMachine n = kturn_segment_nfa(m, {m.start(), m.bottom(), end, 2});
    for (int t = 0; t <= 16; ++t) {
        const ref::BruteResult r = ref::brute_pda(rerooted(m, m.start(), end), unary(t), t + 2);
        CHECK_MESSAGE(nfa_accepts(n, unary(t)) == (r.accepted && r.min_turns <= 2), "t=" << t);
    }
}

TEST_CASE("sentential states stay within floor(log2 j) + 1 and their budgets within j") {
    for (int j : {2, 3, 4, 8}) {
        const PdaMachine m = j < 8 ? parse_pda(ref::mountain_pda_text(2)) : witness_lprime(2);
        KturnStats stats;
        kturn_unary_pda_to_nfa(m, j, &stats);
        CHECK(stats.max_sequence_length <= floor_log2(j) + 1);
        CHECK(stats.max_budget_sum <= j);
        CHECK(stats.states > 0);
    }
}

TEST_CASE("k-turn automata for mountain machines match explicit runs") {
    for (int j : {2, 3}) {
        const PdaMachine m = parse_pda(ref::mountain_pda_text(j));
        KturnStats stats;
        const NfaMachine n = kturn_unary_pda_to_nfa(m, j, &stats);
        CHECK(stats.max_sequence_length <= floor_log2(j) + 1);
        for (int t = 0; t <= 24; ++t) {
            const ref::BruteResult r = ref::brute_pda(m, unary(t), t + 2);
            CHECK(nfa_accepts(n, unary(t)) == r.accepted);
            if (r.accepted) CHECK(r.min_turns <= j);
        }
        // With one turn fewer the automaton keeps exactly the runs with fewer mountains.
        const NfaMachine fewer = kturn_unary_pda_to_nfa(m, j - 1);
        int lost = 0;
        for (int t = 0; t <= 24; ++t) {
            const ref::BruteResult r = ref::brute_pda(m, unary(t), t + 2);
            CHECK(nfa_accepts(fewer, unary(t)) == (r.accepted && r.min_turns <= j - 1));
            lost += nfa_accepts(n, unary(t)) && !nfa_accepts(fewer, unary(t));
        }
        if (j == 2) CHECK(lost == 10);  // the even lengths 6..24
    }
}

TEST_CASE("one-turn witness for n = 3 gives multiples of twelve") {
    const NfaMachine n = kturn_unary_pda_to_nfa(witness_lprime(3), 1);
    for (int t = 0; t <= 36; ++t) CHECK(nfa_accepts(n, unary(t)) == (t % 12 == 0));
}

TEST_CASE("empty machine gives an empty automaton") {
    const PdaMachine m = parse_pda("states: p q\ninput: a\nstack: Z0 A\nbottom: Z0\nstart: p\naccept: q\np eps Z0 -> p push A\n");
    const NfaMachine n = kturn_unary_pda_to_nfa(m, 2);
    for (int t = 0; t <= 10; ++t) CHECK_FALSE(nfa_accepts(n, unary(t)));
}

TEST_CASE("k-turn automata agree with the exact search on random machines") {
    std::mt19937 rng(77);
    for (int i = 0; i < 30; ++i) {
        const int k = 1 + i % 3;
        const PdaMachine m = random_unary(rng, 2 + i % 2, 6 + i % 7);
        const NfaMachine n = kturn_unary_pda_to_nfa(m, k);
        for (int t = 0; t <= 12; ++t) {
            const SearchResult exact = min_turns(m, unary(t));
            const bool within = exact.verdict == Verdict::accepted && *exact.turns <= k;
            CHECK(nfa_accepts(n, unary(t)) == within);
            const ref::BruteResult brute = ref::brute_pda(m, unary(t), 7);
            if (brute.accepted) {
                CHECK(exact.verdict == Verdict::accepted);
                CHECK(*exact.turns <= brute.min_turns);
            }
        }
    }
}

TEST_CASE("explorer builds states on demand") {
    const PdaMachine m = parse_pda(ref::mountain_pda_text(3));
    KturnSegmentExplorer ex(m);
    const int s = ex.start({m.start(), m.bottom(), *m.find_state("d1"), 3});
    CHECK(ex.state_count() == 1);
    CHECK_FALSE(ex.accepting(s));
    CHECK_FALSE(ex.successors(s).empty());
    CHECK(ex.state_count() > 1);
    CHECK_THROWS_AS(ex.start({m.start(), m.bottom(), 0, std::nullopt}), PreconditionError);
}

TEST_CASE("state budget of the k-turn construction is enforced") {
    CHECK_THROWS_AS(kturn_segment_nfas(parse_pda(ref::mountain_pda_text(4)), {{0, 0, 0, 4}}, 5), ResourceError);
}

TEST_CASE("unary constructions refuse larger alphabets") {
    CHECK_THROWS_AS(one_turn_pda_to_nfa(parse_pda(ref::read_file("abba.pda")).with_turn_bound(1)), PreconditionError);
}

} // TEST_SUITE
