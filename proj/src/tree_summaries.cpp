#include "fturn/tree_summaries.hpp"

#include "fturn/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_map>

namespace fturn {

std::vector<int> VarSet::elements() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < bits_.size(); ++w)
        for (int b = 0; b < 64; ++b)
            if (bits_[w] >> b & 1) out.push_back(static_cast<int>(w * 64 + b));
    return out;
}

std::size_t VarSet::hash() const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto w : bits_) h = (h ^ w) * 0x100000001b3ULL + (h >> 29);
    return h;
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

// Summary of a complete subtree: root variable, letter counts, variables used.
struct FullKey {
    int var;
    std::vector<int> yield;
    VarSet nu;
    bool operator==(const FullKey&) const = default;
};
struct FullKeyHash {
    std::size_t operator()(const FullKey& k) const {
        std::size_t h = mix(k.nu.hash(), std::size_t(k.var));
        for (int y : k.yield) h = mix(h, std::size_t(y));
        return h;
    }
};

// Summary of a tree whose frontier contains exactly one unexpanded `foot`
// leaf, rooted at `var`.
struct FootKey {
    int foot, var;
    int left, right;
    VarSet nu;
    bool operator==(const FootKey&) const = default;
};
struct FootKeyHash {
    std::size_t operator()(const FootKey& k) const {
        std::size_t h = mix(k.nu.hash(), std::size_t(k.foot));
        h = mix(h, std::size_t(k.var));
        h = mix(h, std::size_t(k.left));
        return mix(h, std::size_t(k.right));
    }
};

// Best-first queue over small integer costs. Items of equal cost are handled
// in insertion order.
template <class Id>
class BucketQueue {
public:
    void push(long long cost, Id id) {
        if (cost >= static_cast<long long>(buckets_.size())) buckets_.resize(cost + 1);
        buckets_[cost].push_back(id);
    }
    bool pop(long long& cost, Id& id) {
        while (cur_ < static_cast<long long>(buckets_.size())) {
            if (!buckets_[cur_].empty()) {
                id = buckets_[cur_].front();
                buckets_[cur_].pop_front();
                cost = cur_;
                return true;
            }
            ++cur_;
        }
        return false;
    }

private:
    std::vector<std::deque<Id>> buckets_;
    long long cur_ = 0;
};

struct Occurrence {
    int production;
    int position;
};

class Enumerator {
public:
    Enumerator(const Grammar& g, const AlphabetOrder& order, const TreeEnumerationOptions& opt)
        : g_(g), opt_(opt), letter_(letter_positions(g, order)), m_(static_cast<int>(order.size())),
          h_(g.variable_count()) {
        for (const auto& p : g.productions())
            if (p.body.size() > 2)
                throw PreconditionError("tree enumeration needs bodies of length at most 2 (head '" +
                                        g.variables()[p.head] + "')");
        occ_.assign(h_, {});
        for (std::size_t pi = 0; pi < g.productions().size(); ++pi) {
            const auto& body = g.productions()[pi].body;
            for (std::size_t k = 0; k < body.size(); ++k)
                if (!body[k].terminal) occ_[body[k].index].push_back({int(pi), int(k)});
        }
        // 2^h capped well inside 64-bit range.
        const int e = std::min(h_, 40);
        pow_h_ = 1LL << e;
        pow_h1_ = h_ >= 1 ? (1LL << std::min(h_ - 1, 40)) : 1;
    }

    bool height() const { return opt_.bound == TreeBound::height; }

    // Every complete subtree small enough to be a T0 or a side subtree of a
    // partial tree.
    void enumerate_full() {
        const long long limit = height() ? h_ : pow_h_ - 1;
        BucketQueue<int> queue;
        auto offer = [&](FullKey key, long long cost) {
            if (cost > limit) return;
            auto it = full_index_.find(key);
            if (it != full_index_.end()) {
                int id = it->second;
                if (cost < full_cost_[id]) {
                    full_cost_[id] = cost;
                    queue.push(cost, id);
                }
                return;
            }
            int id = static_cast<int>(full_.size());
            if (full_.size() >= opt_.budget)
                throw ResourceError("tree summary budget of " + std::to_string(opt_.budget) + " exceeded");
            full_index_.emplace(key, id);
            full_.push_back(std::move(key));
            full_cost_.push_back(cost);
            full_final_.push_back(0);
            queue.push(cost, id);
        };
        for (const auto& p : g_.productions()) {
            if (std::any_of(p.body.begin(), p.body.end(), [](Symbol s) { return !s.terminal; })) continue;
            FullKey key{p.head, std::vector<int>(m_, 0), VarSet(h_)};
            for (Symbol s : p.body) ++key.yield[letter_[s.index]];
            key.nu.insert(p.head);
            offer(std::move(key), height() ? 1 : static_cast<long long>(p.body.size()));
        }
        finals_by_var_.assign(h_, {});
        long long cost;
        int id;
        while (queue.pop(cost, id)) {
            if (full_final_[id] || cost != full_cost_[id]) continue;
            full_final_[id] = 1;
            const int var = full_[id].var;
            finals_by_var_[var].push_back(id);
            for (const auto& o : occ_[var]) {
                const auto& p = g_.productions()[o.production];
                if (p.body.size() == 1) {
                    FullKey key{p.head, full_[id].yield, full_[id].nu};
                    key.nu.insert(p.head);
                    offer(std::move(key), height() ? cost + 1 : cost);
                    continue;
                }
                Symbol other = p.body[1 - o.position];
                if (other.terminal) {
                    FullKey key{p.head, full_[id].yield, full_[id].nu};
                    ++key.yield[letter_[other.index]];
                    key.nu.insert(p.head);
                    offer(std::move(key), cost + 1);
                    continue;
                }
                // Copy: offer() may grow finals_by_var_ indirectly through full_.
                const std::vector<int> partners = finals_by_var_[other.index];
                for (int z : partners) {
                    FullKey key{p.head, full_[id].yield, full_[id].nu};
                    for (int i = 0; i < m_; ++i) key.yield[i] += full_[z].yield[i];
                    key.nu |= full_[z].nu;
                    key.nu.insert(p.head);
                    long long c = height() ? cost + 1 : cost + full_cost_[z];
                    offer(std::move(key), c);
                }
            }
        }
    }

    std::vector<ShortTreeSummary> short_trees() const {
        const long long limit = height() ? h_ : pow_h1_;
        std::vector<ShortTreeSummary> out;
        for (std::size_t id = 0; id < full_.size(); ++id) {
            const auto& k = full_[id];
            if (k.var != g_.start()) continue;
            long long total = std::accumulate(k.yield.begin(), k.yield.end(), 0LL);
            long long cost = height() ? full_cost_[id] : total;
            if (cost <= limit) out.push_back({k.yield, k.nu});
        }
        std::sort(out.begin(), out.end(), [](const ShortTreeSummary& a, const ShortTreeSummary& b) {
            long long ta = std::accumulate(a.yield.begin(), a.yield.end(), 0LL);
            long long tb = std::accumulate(b.yield.begin(), b.yield.end(), 0LL);
            if (ta != tb) return ta < tb;
            if (a.yield != b.yield) return a.yield < b.yield;
            return a.varset < b.varset;
        });
        return out;
    }

    std::vector<PartialTreeSummary> partial_trees(const BorderTable& borders) {
        if (static_cast<int>(borders.size()) != h_)
            throw PreconditionError("border table does not match the grammar");
        // Side subtrees only contribute a length and a variable set.
        struct Side {
            int len;
            VarSet nu;
            long long cost;
        };
        std::vector<std::vector<Side>> sides(h_);
        {
            std::vector<std::map<std::pair<int, VarSet>, long long>> best(h_);
            for (std::size_t id = 0; id < full_.size(); ++id) {
                const auto& k = full_[id];
                int len = std::accumulate(k.yield.begin(), k.yield.end(), 0);
                auto [it, fresh] = best[k.var].try_emplace({len, k.nu}, full_cost_[id]);
                if (!fresh) it->second = std::min(it->second, full_cost_[id]);
            }
            for (int v = 0; v < h_; ++v)
                for (const auto& [key, cost] : best[v]) sides[v].push_back({key.first, key.second, cost});
        }

        const long long limit = height() ? h_ + 1 : pow_h_ - 1;
        std::unordered_map<FootKey, int, FootKeyHash> index;
        std::vector<FootKey> items;
        std::vector<long long> cost_of;
        std::vector<char> done;
        BucketQueue<int> queue;
        auto offer = [&](FootKey key, long long cost) {
            if (height() ? cost > limit : key.left + key.right > limit) return;
            auto it = index.find(key);
            if (it != index.end()) {
                if (cost < cost_of[it->second]) {
                    cost_of[it->second] = cost;
                    queue.push(cost, it->second);
                }
                return;
            }
            if (items.size() + full_.size() >= opt_.budget)
                throw ResourceError("tree summary budget of " + std::to_string(opt_.budget) + " exceeded");
            int id = static_cast<int>(items.size());
            index.emplace(key, id);
            items.push_back(std::move(key));
            cost_of.push_back(cost);
            done.push_back(0);
            queue.push(cost, id);
        };
        for (int a = 0; a < h_; ++a) {
            if (!borders[a]) continue;
            FootKey key{a, a, 0, 0, VarSet(h_)};
            key.nu.insert(a);
            offer(std::move(key), height() ? 1 : 0);
        }
        long long cost;
        int id;
        while (queue.pop(cost, id)) {
            if (done[id] || cost != cost_of[id]) continue;
            done[id] = 1;
            const FootKey cur = items[id];
            for (const auto& o : occ_[cur.var]) {
                const auto& p = g_.productions()[o.production];
                if (p.body.size() == 1) {
                    FootKey key = cur;
                    key.var = p.head;
                    key.nu.insert(p.head);
                    offer(std::move(key), height() ? cost + 1 : cost);
                    continue;
                }
                Symbol other = p.body[1 - o.position];
                const bool other_left = o.position == 1;
                auto extend = [&](int len, const VarSet* nu, long long side_cost) {
                    FootKey key = cur;
                    key.var = p.head;
                    (other_left ? key.left : key.right) += len;
                    if (nu) key.nu |= *nu;
                    key.nu.insert(p.head);
                    long long c = height() ? 1 + std::max(cost, side_cost) : cost + len;
                    offer(std::move(key), c);
                };
                if (other.terminal) {
                    extend(1, nullptr, 0);
                } else {
                    for (const auto& s : sides[other.index]) extend(s.len, &s.nu, s.cost);
                }
            }
        }

        std::vector<PartialTreeSummary> out;
        for (const auto& k : items) {
            if (k.var != k.foot || k.left + k.right == 0) continue;
            out.push_back({k.foot, *borders[k.foot], k.left, k.right, k.nu});
        }
        std::sort(out.begin(), out.end(), [](const PartialTreeSummary& a, const PartialTreeSummary& b) {
            if (a.root != b.root) return a.root < b.root;
            if (a.left_len != b.left_len) return a.left_len < b.left_len;
            if (a.right_len != b.right_len) return a.right_len < b.right_len;
            return a.varset < b.varset;
        });
        return out;
    }

private:
    const Grammar& g_;
    TreeEnumerationOptions opt_;
    std::vector<int> letter_;
    int m_, h_;
    long long pow_h_, pow_h1_;
    std::vector<std::vector<Occurrence>> occ_;
    std::vector<FullKey> full_;
    std::vector<long long> full_cost_;
    std::vector<char> full_final_;
    std::unordered_map<FullKey, int, FullKeyHash> full_index_;
    std::vector<std::vector<int>> finals_by_var_;
};

} // namespace

std::vector<ShortTreeSummary> enumerate_short_trees(const Grammar& g, const AlphabetOrder& order,
                                                    const TreeEnumerationOptions& options) {
    Enumerator e(g, order, options);
    e.enumerate_full();
    return e.short_trees();
}

std::vector<PartialTreeSummary> enumerate_partial_trees(const Grammar& g, const AlphabetOrder& order,
                                                        const BorderTable& borders,
                                                        const TreeEnumerationOptions& options) {
    Enumerator e(g, order, options);
    e.enumerate_full();
    return e.partial_trees(borders);
}

} // namespace fturn
