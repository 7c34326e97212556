#include "reference.hpp"

#include "fturn/error.hpp"
#include "fturn/grammar_transform.hpp"
#include "fturn/oracle.hpp"
#include "fturn/tree_summaries.hpp"

#include <doctest.h>

using namespace fturn;

namespace {

Grammar example() { return parse_grammar(ref::read_file("example.grammar")); }

const AlphabetOrder abc{"a1", "a2", "a3"};

std::set<Word> cnf_words(const Grammar& cnf, const std::vector<std::string>& alphabet, int max_len) {
    std::set<Word> out;
    const MembershipOracle oracle(cnf);
    for (const Word& w : all_words(alphabet, max_len))
        if (oracle(w) == Verdict::accepted) out.insert(w);
    return out;
}

bool sorted_over(const Word& w, const AlphabetOrder& order) {
    int prev = -1;
    for (const auto& s : w) {
        const int pos = static_cast<int>(std::find(order.begin(), order.end(), s) - order.begin());
        if (pos < prev) return false;
        prev = pos;
    }
    return true;
}

// Border implied by brute-force self-embedding contexts, 1-based.
std::optional<Border> brute_border(const std::set<std::pair<Word, Word>>& contexts, const AlphabetOrder& order) {
    std::set<int> left, right;
    auto index = [&](const std::string& s) {
        return static_cast<int>(std::find(order.begin(), order.end(), s) - order.begin()) + 1;
    };
    for (const auto& [u, v] : contexts) {
        for (const auto& s : u) left.insert(index(s));
        for (const auto& s : v) right.insert(index(s));
    }
    REQUIRE(left.size() <= 1);
    REQUIRE(right.size() <= 1);
    if (left.empty() && right.empty()) return std::nullopt;
    if (right.empty()) return Border{*left.begin(), *left.begin()};
    if (left.empty()) return Border{*right.begin(), *right.begin()};
    return Border{*left.begin(), *right.begin()};
}

} // namespace

TEST_SUITE("grammar-transform") {

TEST_CASE("unreachable variable is removed") {
    const Grammar g = parse_grammar("start: S\nS -> a S | a\nX -> b\n");
    const Grammar r = remove_useless(g);
    CHECK(r.variable_count() == 1);
    CHECK_FALSE(r.find_variable("X"));
}

TEST_CASE("start symbol that derives nothing is an empty-language error") {
    CHECK_THROWS_AS(remove_useless(parse_grammar("start: S\nterminals: a\nS -> S\n")), EmptyLanguageError);
}

TEST_CASE("removing useless variables keeps every short word") {
    std::mt19937 rng(21);
    for (int i = 0; i < 60; ++i) {
        const Grammar g = ref::random_grammar(rng, 2 + i % 5, 3 + i % 7, 3);
        const Grammar r = remove_useless(g);
        CHECK(ref::derivable_words(g, 6) == ref::derivable_words(r, 6));
    }
}

TEST_CASE("binarize leaves short bodies alone") {
    const Grammar g = example();
    CHECK(binarize(g) == g);
}

TEST_CASE("binarize splits a four-symbol body with two fresh variables") {
    const Grammar g = parse_grammar("start: A\nterminals: x1 x2 x3 x4\nA -> x1 x2 x3 x4\n");
    const Grammar b = binarize(g);
    CHECK(b.productions().size() == 3);
    CHECK(b.variable_count() == 3);
    for (const auto& p : b.productions()) CHECK(p.body.size() == 2);
    CHECK(ref::derivable_words(b, 6) == std::set<Word>{{"x1", "x2", "x3", "x4"}});
}

TEST_CASE("binarize stays within the symbol count and keeps the language") {
    std::mt19937 rng(3);
    for (int i = 0; i < 60; ++i) {
        const Grammar g = ref::random_grammar(rng, 1 + i % 4, 2 + i % 6, 5);
        const Grammar b = binarize(g);
        CHECK(static_cast<std::size_t>(b.variable_count()) <= symb_count(g));
        for (const auto& p : b.productions()) CHECK(p.body.size() <= 2);
        CHECK(ref::derivable_words(g, 6) == ref::derivable_words(b, 6));
    }
}

TEST_CASE("normal form conversion") {
    SUBCASE("grammar already in normal form keeps its shape") {
        const Grammar g = example();
        REQUIRE(g.is_cnf());
        const Grammar c = to_cnf(g);
        CHECK(c.variable_count() == g.variable_count());
        CHECK(c.productions().size() == g.productions().size());
    }
    SUBCASE("terminal inside a longer body is lifted") {
        const Grammar c = to_cnf(parse_grammar("start: A\nA -> a B\nB -> b\n"));
        CHECK(c.is_cnf());
        const auto ta = c.find_variable("T_a");
        REQUIRE(ta);
        bool lifted = false, terminal_rule = false;
        for (const auto& p : c.productions()) {
            if (c.variables()[p.head] == "A" && p.body.size() == 2 && p.body[0] == Symbol::var(*ta)) lifted = true;
            if (p.head == *ta && p.body.size() == 1 && p.body[0].terminal) terminal_rule = true;
        }
        CHECK(lifted);
        CHECK(terminal_rule);
    }
    SUBCASE("random grammars keep every word up to length 6") {
        std::mt19937 rng(99);
        for (int i = 0; i < 60; ++i) {
            const Grammar g = ref::random_grammar(rng, 1 + i % 5, 2 + i % 8, 4);
            const Grammar c = to_cnf(g);
            CHECK(c.is_cnf());
            CHECK(cnf_words(c, {"a", "b"}, 6) == ref::derivable_words(g, 6));
        }
    }
}

TEST_CASE("borders of the three-letter example") {
    const Grammar g = example();
    const BorderTable t = compute_borders(g, abc);
    auto border = [&](const char* v) { return t[*g.find_variable(v)]; };
    CHECK(border("S") == Border{1, 3});
    CHECK(border("A") == Border{1, 2});
    CHECK(border("B") == Border{2, 3});
    CHECK_FALSE(border("A1"));
    CHECK_FALSE(border("A2"));
    CHECK_FALSE(border("A3"));
    CHECK(compare_borders(*border("S"), *border("A")) == std::strong_ordering::less);

    const auto contexts = ref::self_embeddings(g, 12, 8);
    for (const char* v : {"E", "Sp", "F", "G", "S", "A", "B"}) {
        const int idx = *g.find_variable(v);
        auto it = contexts.find(idx);
        const auto expected = it == contexts.end() ? std::nullopt : brute_border(it->second, abc);
        CHECK_MESSAGE(t[idx] == expected, v);
    }
}

TEST_CASE("border order") {
    CHECK(compare_borders({1, 3}, {1, 2}) == std::strong_ordering::less);
    CHECK(compare_borders({2, 2}, {2, 2}) == std::strong_ordering::equal);
    CHECK(compare_borders({1, 1}, {2, 2}) == std::strong_ordering::less);
    for (int m = 1; m <= 5; ++m) {
        std::vector<Border> all;
        for (int l = 1; l <= m; ++l)
            for (int r = l; r <= m; ++r) all.push_back({l, r});
        CHECK(all.size() == static_cast<std::size_t>(m * (m + 1) / 2));
        auto le = [](Border x, Border y) { return compare_borders(x, y) <= 0; };
        for (Border x : all)
            for (Border y : all) {
                CHECK((le(x, y) || le(y, x)));
                if (le(x, y) && le(y, x)) CHECK(x == y);
                // definition: l < l', or l = l' and r >= r'
                CHECK(le(x, y) == (x.left < y.left || (x.left == y.left && x.right >= y.right)));
                for (Border z : all)
                    if (le(x, y) && le(y, z)) CHECK(le(x, z));
            }
    }
}

TEST_CASE("a context with two letters is reported") {
    const Grammar g = parse_grammar("start: S\nS -> a S b | b S a | c\n");
    CHECK_THROWS_AS(compute_borders(g, {"a", "b", "c"}), PreconditionError);
}

TEST_CASE("letter-boundedness check") {
    CHECK_FALSE(check_letter_bounded(example(), abc));
    const auto bad = check_letter_bounded(parse_grammar("start: S\nS -> a b | b a\n"), {"a", "b"});
    REQUIRE(bad);
    CHECK(*bad == Word{"b", "a"});
    const auto outside = check_letter_bounded(example(), {"a1", "a2"});
    REQUIRE(outside);
    CHECK(*outside == Word{"a1", "a1", "a2", "a2", "a3", "a3"});
}

TEST_CASE("letter-boundedness agrees with enumeration") {
    std::mt19937 rng(8);
    const AlphabetOrder ab{"a", "b"};
    for (int i = 0; i < 80; ++i) {
        const Grammar g = i % 2 ? ref::random_letter_bounded_grammar(rng, 2 + i % 2, 3, 6)
                                : ref::random_grammar(rng, 2 + i % 3, 3 + i % 5, 3);
        const AlphabetOrder order = i % 2 ? AlphabetOrder(g.terminals()) : ab;
        const auto words = ref::derivable_words(g, 7);
        std::optional<std::size_t> shortest_bad;
        for (const Word& w : words)
            if (!sorted_over(w, order) && (!shortest_bad || w.size() < *shortest_bad)) shortest_bad = w.size();
        const auto verdict = check_letter_bounded(g, order);
        if (shortest_bad) {
            REQUIRE(verdict);
            CHECK(verdict->size() == *shortest_bad);
        }
        if (verdict) {
            CHECK_FALSE(sorted_over(*verdict, order));
            if (verdict->size() <= 7) CHECK(words.count(*verdict) == 1);
        }
        if (i % 2) CHECK_FALSE(verdict);
    }
}

TEST_CASE("borders agree with brute-force self-embedding search") {
    std::mt19937 rng(17);
    int compared = 0;
    for (int i = 0; i < 40; ++i) {
        const int m = 2 + i % 3;
        const Grammar g = binarize(remove_useless(ref::random_letter_bounded_grammar(rng, m, 3, 5)));
        const AlphabetOrder order(g.terminals().begin(), g.terminals().end());
        AlphabetOrder full;
        for (int k = 1; k <= m; ++k) full.push_back("a" + std::to_string(k));
        const BorderTable t = compute_borders(g, full);
        const auto contexts = ref::self_embeddings(g, 9, 10);
        for (int a = 0; a < g.variable_count(); ++a) {
            auto it = contexts.find(a);
            const auto expected = it == contexts.end() ? std::nullopt : brute_border(it->second, full);
            CHECK(t[a] == expected);
            ++compared;
        }
    }
    CHECK(compared > 50);
}

TEST_CASE("short trees") {
    SUBCASE("single terminal rule") {
        const Grammar g = parse_grammar("start: S\nS -> a\n");
        const auto trees = enumerate_short_trees(g, {"a"});
        REQUIRE(trees.size() == 1);
        CHECK(trees[0].yield == std::vector<int>{1});
        CHECK(trees[0].varset.elements() == std::vector<int>{0});
    }
    SUBCASE("the doubling witness has exactly one summary") {
        const auto trees = enumerate_short_trees(witness_ln(2), {"a"});
        REQUIRE(trees.size() == 1);
        CHECK(trees[0].yield == std::vector<int>{4});
    }
    SUBCASE("the example contains the tree for a1^2 a2^2 a3^2") {
        const Grammar g = example();
        const auto trees = enumerate_short_trees(g, abc, {TreeBound::height, 200000});
        VarSet expected(g.variable_count());
        for (const char* v : {"S", "A1", "E", "Sp", "A3", "A", "B", "A2"}) expected.insert(*g.find_variable(v));
        bool found = false;
        for (const auto& t : trees) found |= t.yield == std::vector<int>{2, 2, 2} && t.varset == expected;
        CHECK(found);
    }
    SUBCASE("every summary has a derivable yield and contains the start symbol") {
        const Grammar g = example();
        const auto trees = enumerate_short_trees(g, abc, {TreeBound::height, 200000});
        const MembershipOracle oracle(g);
        for (const auto& t : trees) {
            CHECK(t.varset.contains(g.start()));
            Word w;
            for (int i = 0; i < 3; ++i) w.insert(w.end(), static_cast<std::size_t>(t.yield[i]), abc[i]);
            CHECK(oracle(w) == Verdict::accepted);
        }
    }
}

TEST_CASE("variables sharing a tree have nested or disjoint borders") {
    const Grammar g = example();
    const BorderTable b = compute_borders(g, abc);
    auto nested = [](Border x, Border y) { return x.left <= y.left && y.left <= y.right && y.right <= x.right; };
    auto right_of = [](Border x, Border y) { return x.left < y.left && x.right < y.right && x.right <= y.left; };
    for (const auto& t : enumerate_short_trees(g, abc, {TreeBound::height, 200000})) {
        const auto vars = t.varset.elements();
        for (int x : vars)
            for (int y : vars) {
                if (!b[x] || !b[y]) continue;
                CHECK((nested(*b[x], *b[y]) || nested(*b[y], *b[x]) || right_of(*b[x], *b[y]) ||
                       right_of(*b[y], *b[x])));
            }
    }
}

TEST_CASE("partial trees") {
    SUBCASE("the example contains the pumping tree S => a1 S a3") {
        const Grammar g = example();
        const auto parts = enumerate_partial_trees(g, abc, compute_borders(g, abc), {TreeBound::height, 200000});
        VarSet expected(g.variable_count());
        for (const char* v : {"S", "A1", "E", "A3"}) expected.insert(*g.find_variable(v));
        bool found = false;
        for (const auto& p : parts)
            found |= p.root == g.start() && p.border == Border{1, 3} && p.left_len == 1 && p.right_len == 1 &&
                     p.varset == expected;
        CHECK(found);
    }
    SUBCASE("no self-embedding means no partial trees") {
        const Grammar g = witness_ln(3);
        CHECK(enumerate_partial_trees(g, {"a"}, compute_borders(g, {"a"})).empty());
    }
    SUBCASE("every summary is confirmed by an explicit derivation") {
        std::mt19937 rng(4);
        int checked = 0;
        for (int i = 0; i < 30; ++i) {
            const int m = 2 + i % 2;
            const Grammar g = binarize(remove_useless(ref::random_letter_bounded_grammar(rng, m, 2, 4)));
            if (g.variable_count() > 4) continue;
            AlphabetOrder full;
            for (int k = 1; k <= m; ++k) full.push_back("a" + std::to_string(k));
            const auto parts = enumerate_partial_trees(g, full, compute_borders(g, full));
            const std::size_t limit = std::size_t(1) << g.variable_count();
            const auto contexts = ref::self_embeddings(g, limit + 1, static_cast<int>(3 * limit));
            for (const auto& p : parts) {
                CHECK(p.left_len + p.right_len > 0);
                CHECK(static_cast<std::size_t>(p.left_len + p.right_len) < limit);
                CHECK(p.varset.contains(p.root));
                bool seen = false;
                for (const auto& [u, v] : contexts.at(p.root))
                    seen |= static_cast<int>(u.size()) == p.left_len && static_cast<int>(v.size()) == p.right_len;
                CHECK(seen);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("summary budget is enforced") {
    CHECK_THROWS_AS(enumerate_short_trees(example(), abc, {TreeBound::yield, 50}), ResourceError);
}

TEST_CASE("word-boundedness check") {
    const Grammar g = parse_grammar(ref::read_file("abba.grammar"));
    CHECK_FALSE(check_word_bounded(g, {{"a", "b"}, {"b", "a"}}));
    const auto bad = check_word_bounded(g, {{"b", "a"}, {"a", "b"}});
    REQUIRE(bad);
    CHECK(*bad == Word{"a", "b", "b", "a"});
}

TEST_CASE("merging equivalent variables keeps the language") {
    const Grammar g = parse_grammar("start: S\nS -> A B | C B\nA -> a\nC -> a\nB -> b\n");
    const Grammar merged = merge_equivalent_variables(g);
    CHECK(merged.variable_count() == 3);
    CHECK(ref::derivable_words(merged, 4) == ref::derivable_words(g, 4));
}

} // TEST_SUITE
