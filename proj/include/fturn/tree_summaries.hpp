#pragma once

#include "fturn/grammar.hpp"
#include "fturn/grammar_transform.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fturn {

/// Set of variable indices as a bit vector.
class VarSet {
public:
    VarSet() = default;
    explicit VarSet(int universe) : bits_((universe + 63) / 64, 0) {}

    void insert(int v) { bits_[v / 64] |= std::uint64_t(1) << (v % 64); }
    bool contains(int v) const { return v / 64 < static_cast<int>(bits_.size()) && (bits_[v / 64] >> (v % 64) & 1); }
    VarSet& operator|=(const VarSet& o) {
        for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
        return *this;
    }
    bool subset_of(const VarSet& o) const {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~o.bits_[i]) return false;
        return true;
    }
    std::vector<int> elements() const;
    std::size_t hash() const;
    const std::vector<std::uint64_t>& words() const { return bits_; }
    auto operator<=>(const VarSet&) const = default;

private:
    std::vector<std::uint64_t> bits_;
};

struct ShortTreeSummary {
    std::vector<int> yield;  ///< n_1..n_m
    VarSet varset;           ///< variables occurring in the tree

    bool operator==(const ShortTreeSummary&) const = default;
};

struct PartialTreeSummary {
    int root = 0;
    Border border;
    int left_len = 0;   ///< |v| in root =>* v root x
    int right_len = 0;  ///< |x|
    VarSet varset;

    bool operator==(const PartialTreeSummary&) const = default;
};

/// Which trees count as "short".
enum class TreeBound {
    /// Derivation trees with yield at most 2^(h-1); partial trees with
    /// 0 < |vx| < 2^h. h is the number of variables.
    yield,
    /// Derivation trees of height at most h (variable nodes on a path);
    /// partial trees of height at most h+1 with |vx| > 0. For grammars in
    /// Chomsky normal form every larger tree still decomposes into such pieces.
    height,
};

struct TreeEnumerationOptions {
    TreeBound bound = TreeBound::yield;
    std::size_t budget = 200000;  ///< maximum number of summaries kept
};

/// Sorted by total yield, then yield vector, then variable set.
std::vector<ShortTreeSummary> enumerate_short_trees(const Grammar& g, const AlphabetOrder& order,
                                                    const TreeEnumerationOptions& options = {});

/// Sorted by root, lengths, then variable set. Only roots with a defined border
/// can have entries.
std::vector<PartialTreeSummary> enumerate_partial_trees(const Grammar& g, const AlphabetOrder& order,
                                                        const BorderTable& borders,
                                                        const TreeEnumerationOptions& options = {});

} // namespace fturn
