#pragma once

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccpart {

// Ground set of constraint-row indices {0, ..., size-1}.
struct GroundSet {
    std::size_t size = 0;
};

// Subset of {0, ..., universe-1}, stored as bit words. Canonical value type:
// equality, ordering and hashing depend only on (universe, members).
class IndexSet {
public:
    IndexSet() = default;

    explicit IndexSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    static IndexSet empty(std::size_t universe) { return IndexSet(universe); }

    static IndexSet full(std::size_t universe) {
        IndexSet s(universe);
        for (std::size_t j = 0; j < universe; ++j) s.insert(static_cast<int>(j));
        return s;
    }

    static IndexSet singleton(int j, std::size_t universe) {
        IndexSet s(universe);
        s.insert(j);
        return s;
    }

    static IndexSet of(std::initializer_list<int> js, std::size_t universe) {
        IndexSet s(universe);
        for (int j : js) s.insert(j);
        return s;
    }

    // Bits of `mask` interpreted as members; universe must be <= 64.
    static IndexSet from_mask(std::uint64_t mask, std::size_t universe) {
        IndexSet s(universe);
        if (!s.words_.empty()) s.words_[0] = mask;
        s.check_top_word();
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(int j) const {
        check_range(j);
        return (words_[static_cast<std::size_t>(j) >> 6] >> (j & 63)) & 1u;
    }

    void insert(int j) {
        check_range(j);
        words_[static_cast<std::size_t>(j) >> 6] |= (std::uint64_t{1} << (j & 63));
    }

    void erase(int j) {
        check_range(j);
        words_[static_cast<std::size_t>(j) >> 6] &= ~(std::uint64_t{1} << (j & 63));
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    bool is_empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool is_subset_of(const IndexSet& o) const {
        require_same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const IndexSet& o) const {
        require_same_universe(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    IndexSet united(const IndexSet& o) const {
        require_same_universe(o);
        IndexSet r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
        return r;
    }

    IndexSet intersected(const IndexSet& o) const {
        require_same_universe(o);
        IndexSet r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
        return r;
    }

    IndexSet minus(const IndexSet& o) const {
        require_same_universe(o);
        IndexSet r = *this;
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
        return r;
    }

    IndexSet complement() const {
        IndexSet r = full(universe_);
        return r.minus(*this);
    }

    // Smallest member, or -1 on the empty set.
    int min_element() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return static_cast<int>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[i])));
        return -1;
    }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(count());
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                int b = __builtin_ctzll(w);
                out.push_back(static_cast<int>(i * 64) + b);
                w &= w - 1;
            }
        }
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<int>(i * 64) + b);
                w &= w - 1;
            }
        }
    }

    bool operator==(const IndexSet& o) const {
        return universe_ == o.universe_ && words_ == o.words_;
    }
    bool operator!=(const IndexSet& o) const { return !(*this == o); }

    // Lexicographic on words; deterministic total order within one universe.
    bool operator<(const IndexSet& o) const {
        if (universe_ != o.universe_) return universe_ < o.universe_;
        return words_ < o.words_;
    }

    std::size_t hash() const {
        // FNV-1a over the words
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : words_) {
            for (int k = 0; k < 8; ++k) {
                h ^= (w >> (8 * k)) & 0xff;
                h *= 1099511628211ull;
            }
        }
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int j : members()) {
            if (!first) s += ",";
            s += std::to_string(j);
            first = false;
        }
        return s + "}";
    }

private:
    void check_range(int j) const {
        if (j < 0 || static_cast<std::size_t>(j) >= universe_)
            throw std::out_of_range("IndexSet: index " + std::to_string(j) +
                                    " outside ground set of size " + std::to_string(universe_));
    }
    void require_same_universe(const IndexSet& o) const {
        if (universe_ != o.universe_)
            throw std::invalid_argument("IndexSet: mismatched ground sets");
    }
    void check_top_word() {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct IndexSetHash {
    std::size_t operator()(const IndexSet& s) const { return s.hash(); }
};

// Disjoint cover of a ground set, parts kept in canonical order
// (by smallest contained index).
struct Partition {
    std::vector<IndexSet> parts;

    std::size_t size() const { return parts.size(); }

    void canonicalize();
    // Throws unless parts are nonempty, pairwise disjoint and cover the ground set.
    void validate(const GroundSet& ground) const;
};

}  // namespace ccpart
