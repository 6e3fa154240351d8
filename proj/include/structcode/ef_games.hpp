#pragma once

// Ehrenfeucht-Fraisse games on finite structures.
//
// ef_winner searches the game tree top-down with memoization on positions
// (the set of pebbled pairs plus the rounds left) and skips Spoiler moves and
// Duplicator replies that lie in the same orbit under the automorphisms fixing
// the pebbled elements. equiv_n computes the back-and-forth hierarchy of
// partial isomorphisms bottom-up and does not share code with the game search
// beyond partial_iso_check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "structcode/core.hpp"
#include "structcode/search.hpp"
#include "structcode/shelah.hpp"

namespace structcode {

enum class Player { Duplicator, Spoiler };

inline const char* to_string(Player p) { return p == Player::Duplicator ? "Duplicator" : "Spoiler"; }

using Pebble = std::pair<std::size_t, std::size_t>;  // (left element, right element)

struct GameState {
    const FinStructure* left = nullptr;
    const FinStructure* right = nullptr;
    std::vector<Pebble> pebbles;
    std::size_t rounds_left = 0;
};

// True iff the pebble correspondence is a well-defined injective map that
// preserves and reflects every atomic fact among pebbled elements.
inline bool partial_iso_check(const FinStructure& left, const FinStructure& right, std::span<const Pebble> pebbles) {
    if (!(left.signature() == right.signature())) return false;
    const std::size_t p = pebbles.size();
    for (std::size_t i = 0; i < p; ++i) {
        if (pebbles[i].first >= left.size() || pebbles[i].second >= right.size()) return false;
        for (std::size_t j = 0; j < p; ++j)
            if ((pebbles[i].first == pebbles[j].first) != (pebbles[i].second == pebbles[j].second)) return false;
    }
    std::vector<std::size_t> lt, rt;
    for (std::size_t r = 0; r < left.signature().size(); ++r) {
        const std::size_t k = left.signature()[r].arity;
        lt.resize(k);
        rt.resize(k);
        bool ok = true;
        for_each_tuple(p, k, [&](const Tuple& idx) {
            if (!ok) return;
            for (std::size_t i = 0; i < k; ++i) {
                lt[i] = pebbles[idx[i]].first;
                rt[i] = pebbles[idx[i]].second;
            }
            if (left.holds(r, lt) != right.holds(r, rt)) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

inline bool partial_iso_check(const GameState& state) {
    return partial_iso_check(*state.left, *state.right, state.pebbles);
}

struct EfOptions {
    std::size_t state_cap = 10'000'000;
    std::size_t automorphism_cap = 5'000;  // beyond this, orbit pruning is disabled for the structure
};

// Per-structure data reused across games: atomic-type tables for signatures of
// arity <= 2 and the automorphism group used for orbit pruning.
class PreparedStructure {
public:
    explicit PreparedStructure(const FinStructure& s, const EfOptions& opts = {}) : s_(&s) {
        const auto& sig = s.signature();
        fast_ = sig.size() <= 64;
        for (const auto& r : sig.relations()) fast_ = fast_ && r.arity <= 2;
        const std::size_t n = s.size();
        if (fast_ && n <= 4096) {
            unary_.assign(n, 0);
            binary_.assign(n * n, 0);
            for (std::size_t r = 0; r < sig.size(); ++r)
                for (const auto& t : s.facts(r)) {
                    if (t.size() == 1) unary_[t[0]] |= std::uint64_t{1} << r;
                    else binary_[t[0] * n + t[1]] |= std::uint64_t{1} << r;
                }
        } else {
            fast_ = false;
        }
        auto autos = structcode::automorphisms(s, opts.automorphism_cap);
        if (!autos.truncated)
            for (const auto& m : autos.morphisms)
                if (m != Morphism::identity(n)) automorphisms_.push_back(m.map());
    }

    const FinStructure& structure() const { return *s_; }
    std::size_t size() const { return s_->size(); }
    bool fast() const { return fast_; }
    std::uint64_t unary(std::size_t x) const { return unary_[x]; }
    std::uint64_t binary(std::size_t x, std::size_t y) const { return binary_[x * s_->size() + y]; }
    const std::vector<std::vector<std::size_t>>& automorphisms() const { return automorphisms_; }

    // Orbit representatives of the automorphisms that fix every element of `fixed`.
    std::vector<bool> representatives(std::span<const std::size_t> fixed) const {
        std::vector<bool> rep(size(), true);
        for (const auto& sigma : automorphisms_) {
            bool stabilizes = true;
            for (auto x : fixed)
                if (sigma[x] != x) {
                    stabilizes = false;
                    break;
                }
            if (!stabilizes) continue;
            for (std::size_t x = 0; x < size(); ++x)
                if (sigma[x] < x) rep[x] = false;
        }
        return rep;
    }

private:
    const FinStructure* s_;
    bool fast_ = false;
    std::vector<std::uint64_t> unary_;
    std::vector<std::uint64_t> binary_;
    std::vector<std::vector<std::size_t>> automorphisms_;  // non-identity
};

class EfSolver {
public:
    EfSolver(const PreparedStructure& left, const PreparedStructure& right, const EfOptions& opts = {})
        : L_(left), R_(right), opts_(opts) {
        if (!(left.structure().signature() == right.structure().signature()))
            throw InvalidStructure("ef: structures have different signatures");
        const std::size_t base = R_.size() + 1;
        std::size_t cells = 1;
        dense_ = true;
        for (std::size_t i = 0; i < L_.size() && dense_; ++i) {
            if (cells > (std::size_t{1} << 20) / base) dense_ = false;
            cells *= base;
        }
        if (dense_) {
            weight_.resize(L_.size());
            std::size_t w = 1;
            for (std::size_t a = 0; a < L_.size(); ++a, w *= base) weight_[a] = w;
            cells_ = cells;
        }
    }

    Player winner(std::size_t rounds) { return winner_from({}, rounds); }

    Player winner_from(std::vector<Pebble> pebbles, std::size_t rounds) {
        std::vector<Pebble> clean;
        for (auto pb : pebbles) {
            if (std::find(clean.begin(), clean.end(), pb) != clean.end()) continue;
            if (!extends(clean, pb.first, pb.second)) return Player::Spoiler;
            clean.push_back(pb);
        }
        return duplicator_wins(clean, rounds) ? Player::Duplicator : Player::Spoiler;
    }

    std::size_t states() const { return states_; }

    // Human-readable line of play for the winner over `rounds` rounds.
    std::vector<std::string> trace(std::size_t rounds) {
        std::vector<std::string> out;
        std::vector<Pebble> pos;
        if (duplicator_wins(pos, rounds)) {
            out.push_back("winner=Duplicator rounds=" + std::to_string(rounds));
            if (rounds == 0) return out;
            for (int side = 0; side < 2; ++side) {
                const std::size_t n = side == 0 ? L_.size() : R_.size();
                for (std::size_t x = 0; x < n; ++x) {
                    auto reply = winning_reply(pos, side == 0, x, rounds);
                    out.push_back(std::string("spoiler=") + (side == 0 ? "left:" : "right:") + std::to_string(x) +
                                  " duplicator=" + (side == 0 ? "right:" : "left:") +
                                  (reply ? std::to_string(*reply) : std::string("-")));
                }
            }
            return out;
        }
        out.push_back("winner=Spoiler rounds=" + std::to_string(rounds));
        for (std::size_t r = rounds; r > 0; --r) {
            auto move = spoiler_winning_move(pos, r);
            if (!move) break;
            const bool left = move->first;
            const std::size_t x = move->second;
            std::optional<std::size_t> reply;
            const std::size_t m = left ? R_.size() : L_.size();
            for (std::size_t y = 0; y < m && !reply; ++y) {
                const Pebble pb = left ? Pebble{x, y} : Pebble{y, x};
                if (extends(pos, pb.first, pb.second)) reply = y;
            }
            std::ostringstream line;
            line << "round=" << (rounds - r + 1) << " spoiler=" << (left ? "left:" : "right:") << x;
            if (!reply) {
                line << " duplicator=none (no partial isomorphism extends)";
                out.push_back(line.str());
                break;
            }
            line << " duplicator=" << (left ? "right:" : "left:") << *reply;
            out.push_back(line.str());
            pos.push_back(left ? Pebble{x, *reply} : Pebble{*reply, x});
        }
        return out;
    }

private:
    // Does pebbles + (a, b) remain a partial isomorphism? (pebbles already is one)
    bool extends(const std::vector<Pebble>& pebbles, std::size_t a, std::size_t b) const {
        for (const auto& [x, y] : pebbles)
            if ((x == a) != (y == b)) return false;
        if (L_.fast() && R_.fast()) {
            if (L_.unary(a) != R_.unary(b) || L_.binary(a, a) != R_.binary(b, b)) return false;
            for (const auto& [x, y] : pebbles)
                if (L_.binary(a, x) != R_.binary(b, y) || L_.binary(x, a) != R_.binary(y, b)) return false;
            return true;
        }
        std::vector<Pebble> all = pebbles;
        all.emplace_back(a, b);
        const auto& ls = L_.structure();
        const auto& rs = R_.structure();
        const std::size_t p = all.size();
        std::vector<std::size_t> lt, rt;
        for (std::size_t r = 0; r < ls.signature().size(); ++r) {
            const std::size_t k = ls.signature()[r].arity;
            lt.resize(k);
            rt.resize(k);
            bool ok = true;
            for_each_tuple(p, k, [&](const Tuple& idx) {
                if (!ok || std::find(idx.begin(), idx.end(), p - 1) == idx.end()) return;
                for (std::size_t i = 0; i < k; ++i) {
                    lt[i] = all[idx[i]].first;
                    rt[i] = all[idx[i]].second;
                }
                if (ls.holds(r, lt) != rs.holds(r, rt)) ok = false;
            });
            if (!ok) return false;
        }
        return true;
    }

    struct KeyHash {
        std::size_t operator()(const std::vector<std::size_t>& v) const {
            std::size_t h = v.size();
            for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };

    std::uint8_t* memo_slot(const std::vector<Pebble>& pebbles, std::size_t rounds) {
        if (dense_) {
            if (dense_memo_.size() <= rounds) dense_memo_.resize(rounds + 1);
            auto& level = dense_memo_[rounds];
            if (level.empty()) level.assign(cells_, 0);
            std::size_t idx = 0;
            for (const auto& [a, b] : pebbles) idx += (b + 1) * weight_[a];
            return &level[idx];
        }
        std::vector<std::size_t> key;
        std::vector<Pebble> sorted = pebbles;
        std::sort(sorted.begin(), sorted.end());
        key.reserve(2 * sorted.size() + 1);
        for (const auto& [a, b] : sorted) {
            key.push_back(a);
            key.push_back(b);
        }
        key.push_back(rounds);
        return &hash_memo_[key];
    }

    std::vector<std::size_t> lefts(const std::vector<Pebble>& pebbles) const {
        std::vector<std::size_t> out;
        for (const auto& p : pebbles) out.push_back(p.first);
        return out;
    }
    std::vector<std::size_t> rights(const std::vector<Pebble>& pebbles) const {
        std::vector<std::size_t> out;
        for (const auto& p : pebbles) out.push_back(p.second);
        return out;
    }

    // Duplicator reply to Spoiler pebbling x on the given side, or none.
    std::optional<std::size_t> winning_reply(std::vector<Pebble>& pebbles, bool spoiler_left, std::size_t x,
                                             std::size_t rounds) {
        for (const auto& [a, b] : pebbles)
            if ((spoiler_left ? a : b) == x) return spoiler_left ? b : a;  // already pebbled: copy the partner
        const PreparedStructure& other = spoiler_left ? R_ : L_;
        const auto used = spoiler_left ? rights(pebbles) : lefts(pebbles);
        const auto rep = other.representatives(used);
        for (std::size_t y = 0; y < other.size(); ++y) {
            if (!rep[y]) continue;
            const Pebble pb = spoiler_left ? Pebble{x, y} : Pebble{y, x};
            if (!extends(pebbles, pb.first, pb.second)) continue;
            pebbles.push_back(pb);
            const bool ok = duplicator_wins(pebbles, rounds - 1);
            pebbles.pop_back();
            if (ok) return y;
        }
        return std::nullopt;
    }

    std::optional<std::pair<bool, std::size_t>> spoiler_winning_move(std::vector<Pebble>& pebbles, std::size_t rounds) {
        for (int side = 0; side < 2; ++side) {
            const bool left = side == 0;
            const PreparedStructure& mine = left ? L_ : R_;
            const auto used = left ? lefts(pebbles) : rights(pebbles);
            const auto rep = mine.representatives(used);
            for (std::size_t x = 0; x < mine.size(); ++x) {
                if (!rep[x] || std::find(used.begin(), used.end(), x) != used.end()) continue;
                if (!winning_reply(pebbles, left, x, rounds)) return std::make_pair(left, x);
            }
        }
        return std::nullopt;
    }

    bool duplicator_wins(std::vector<Pebble>& pebbles, std::size_t rounds) {
        if (rounds == 0) return true;
        std::uint8_t* slot = memo_slot(pebbles, rounds);
        if (*slot) return *slot == 1;
        if (++states_ > opts_.state_cap) throw BudgetExceeded("ef: state cap exceeded");
        const bool result = !spoiler_winning_move(pebbles, rounds);
        // The memo may have grown; look the slot up again.
        *memo_slot(pebbles, rounds) = result ? 1 : 2;
        return result;
    }

    const PreparedStructure& L_;
    const PreparedStructure& R_;
    EfOptions opts_;
    bool dense_ = false;
    std::size_t cells_ = 0;
    std::vector<std::size_t> weight_;
    std::vector<std::vector<std::uint8_t>> dense_memo_;
    std::unordered_map<std::vector<std::size_t>, std::uint8_t, KeyHash> hash_memo_;
    std::size_t states_ = 0;
};

inline Player ef_winner(const FinStructure& left, const FinStructure& right, std::size_t rounds,
                        const EfOptions& opts = {}) {
    PreparedStructure l(left, opts), r(right, opts);
    return EfSolver(l, r, opts).winner(rounds);
}

// ---------------------------------------------------------------------------
// Back-and-forth hierarchy
// ---------------------------------------------------------------------------

// result[k] == true iff left and right are k-equivalent, for k = 0..n.
//
// I_0 is the set of partial isomorphisms with at most n pairs; p is in I_{k+1}
// iff |p| <= n-k-1 and every element on either side can be added to p with some
// partner so that the extension lies in I_k. left ==_k right iff {} is in I_k.
inline std::vector<bool> equiv_profile(const FinStructure& left, const FinStructure& right, std::size_t n,
                                       std::size_t cap = 10'000'000) {
    if (!(left.signature() == right.signature())) throw InvalidStructure("equiv_n: structures have different signatures");
    const std::size_t nl = left.size(), nr = right.size();

    // A partial map is identified by sum (b + 1) * (nr + 1)^a over its pairs when
    // that fits a small table, and by its sorted pair list otherwise.
    std::size_t cells = 1;
    bool dense = true;
    for (std::size_t a = 0; a < nl && dense; ++a) {
        if (cells > (std::size_t{1} << 22) / (nr + 1)) dense = false;
        cells *= nr + 1;
    }
    std::vector<std::size_t> weight(nl, 0);
    for (std::size_t a = 0, w = 1; a < nl && dense; ++a, w *= nr + 1) weight[a] = w;
    constexpr std::size_t absent = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dense_index(dense ? cells : 0, absent);
    std::map<std::vector<Pebble>, std::size_t> sparse_index;

    std::vector<std::vector<Pebble>> maps;
    std::vector<std::size_t> codes;
    std::vector<Pebble> cur;
    std::vector<bool> used_right(nr, false);
    std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t from, std::size_t code) {
        if (!partial_iso_check(left, right, cur)) return;
        if (maps.size() >= cap) throw BudgetExceeded("equiv_n: partial-map table exceeds cap");
        if (dense) dense_index[code] = maps.size();
        else sparse_index.emplace(cur, maps.size());
        maps.push_back(cur);
        codes.push_back(code);
        if (cur.size() == n) return;
        for (std::size_t a = from; a < nl; ++a)
            for (std::size_t b = 0; b < nr; ++b) {
                if (used_right[b]) continue;
                used_right[b] = true;
                cur.emplace_back(a, b);
                grow(a + 1, dense ? code + (b + 1) * weight[a] : 0);
                cur.pop_back();
                used_right[b] = false;
            }
    };
    grow(0, 0);

    auto lookup = [&](std::size_t i, std::size_t a, std::size_t b) -> std::size_t {
        if (dense) return dense_index[codes[i] + (b + 1) * weight[a]];
        std::vector<Pebble> q = maps[i];
        q.emplace_back(a, b);
        std::sort(q.begin(), q.end());
        auto it = sparse_index.find(q);
        return it == sparse_index.end() ? absent : it->second;
    };

    std::vector<char> level(maps.size(), 1);  // I_0 membership
    std::vector<bool> result(n + 1, false);
    result[0] = true;
    std::vector<char> in_dom(nl), in_range(nr);
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<char> next(maps.size(), 0);
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const auto& p = maps[i];
            if (p.size() + k > n || !level[i]) continue;
            std::fill(in_dom.begin(), in_dom.end(), 0);
            std::fill(in_range.begin(), in_range.end(), 0);
            for (const auto& [a, b] : p) in_dom[a] = in_range[b] = 1;
            bool ok = true;
            for (std::size_t a = 0; a < nl && ok; ++a) {
                if (in_dom[a]) continue;
                bool found = false;
                for (std::size_t b = 0; b < nr && !found; ++b) {
                    if (in_range[b]) continue;
                    const std::size_t j = lookup(i, a, b);
                    found = j != absent && level[j];
                }
                ok = found;
            }
            for (std::size_t b = 0; b < nr && ok; ++b) {
                if (in_range[b]) continue;
                bool found = false;
                for (std::size_t a = 0; a < nl && !found; ++a) {
                    if (in_dom[a]) continue;
                    const std::size_t j = lookup(i, a, b);
                    found = j != absent && level[j];
                }
                ok = found;
            }
            next[i] = ok;
        }
        level = std::move(next);
        result[k] = level[0];  // maps[0] is the empty map
    }
    return result;
}

inline bool equiv_n(const FinStructure& left, const FinStructure& right, std::size_t n) {
    return equiv_profile(left, right, n).back();
}

// ---------------------------------------------------------------------------
// The h_M strategy between restrictions of S_0 and S_1
// ---------------------------------------------------------------------------

// Duplicator's reply: index into the other structure's element list.
using DuplicatorStrategy =
    std::function<std::optional<std::size_t>(bool spoiler_left, std::size_t element, std::span<const Pebble> history)>;

inline DuplicatorStrategy reduct_strategy(const ShelahRestriction& left, const ShelahRestriction& right, std::size_t M) {
    ReductIso h(M);
    std::map<SElem, std::size_t> left_index, right_index;
    for (std::size_t i = 0; i < left.elements.size(); ++i) left_index[left.elements[i]] = i;
    for (std::size_t i = 0; i < right.elements.size(); ++i) right_index[right.elements[i]] = i;
    return [=](bool spoiler_left, std::size_t x, std::span<const Pebble>) -> std::optional<std::size_t> {
        if (spoiler_left) {
            auto it = right_index.find(h(left.elements[x]));
            if (it == right_index.end()) return std::nullopt;
            return it->second;
        }
        auto it = left_index.find(h.inverse(right.elements[x]));
        if (it == left_index.end()) return std::nullopt;
        return it->second;
    };
}

// Plays every Spoiler move sequence of length n against `strategy` and checks
// the partial-isomorphism condition after every round.
inline bool verify_duplicator_strategy(const ShelahRestriction& left, const ShelahRestriction& right, std::size_t n,
                                       const DuplicatorStrategy& strategy) {
    std::vector<Pebble> history;
    std::function<bool(std::size_t)> play = [&](std::size_t rounds) {
        if (rounds == 0) return true;
        for (int side = 0; side < 2; ++side) {
            const bool from_left = side == 0;
            const std::size_t count = from_left ? left.elements.size() : right.elements.size();
            for (std::size_t x = 0; x < count; ++x) {
                auto reply = strategy(from_left, x, history);
                if (!reply) return false;
                history.push_back(from_left ? Pebble{x, *reply} : Pebble{*reply, x});
                const bool ok = partial_iso_check(left.structure, right.structure, history) && play(rounds - 1);
                history.pop_back();
                if (!ok) return false;
            }
        }
        return true;
    };
    return play(n);
}

inline bool verify_duplicator_strategy(const ShelahRestriction& left, const ShelahRestriction& right, std::size_t M,
                                       std::size_t n) {
    return verify_duplicator_strategy(left, right, n, reduct_strategy(left, right, M));
}

}  // namespace structcode
