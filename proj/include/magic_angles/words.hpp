#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "magic_angles/angle.hpp"
#include "magic_angles/components.hpp"
#include "magic_angles/errors.hpp"
#include "magic_angles/expansion.hpp"
#include "magic_angles/word.hpp"

namespace magic_angles {

// Mechanical-word parameters: alpha in (0,1) irrational, described by
// a finite prefix of its continued fraction [0; a1, a2, ...], and an
// exact rational beta (normalized into [0,1), which leaves the digit
// formula unchanged).  The prefix pins alpha into the open interval
// between the last convergent and the mediant with the previous one;
// floors are certified against that interval.
class SturmianParams {
public:
    SturmianParams(std::vector<unsigned> quotients, Rational beta)
        : quotients_(std::move(quotients)), beta_(std::move(beta)) {
        if (quotients_.empty())
            throw hypothesis_error("continued fraction prefix must be nonempty");
        for (unsigned a : quotients_)
            if (a == 0) throw hypothesis_error("partial quotients must be positive");
        beta_ -= Rational(floor_rat(beta_));

        Integer hp = 1, kp = 0; // h_{-1}/k_{-1}
        Integer h = 0, k = 1;   // h_0/k_0
        for (unsigned a : quotients_) {
            Integer hn = Integer(a) * h + hp;
            Integer kn = Integer(a) * k + kp;
            hp = h;
            kp = k;
            h = hn;
            k = kn;
        }
        lo_ = Rational(h, k);
        hi_ = Rational(h + hp, k + kp);
        if (hi_ < lo_) std::swap(lo_, hi_);
    }

    const Rational& beta() const noexcept { return beta_; }

    // floor(n*alpha + beta) whenever it is constant over all alpha
    // compatible with the prefix; nullopt otherwise.
    std::optional<Integer> floor_linear(std::size_t n) const {
        Rational a = Rational(static_cast<unsigned long>(n)) * lo_ + beta_;
        Rational b = Rational(static_cast<unsigned long>(n)) * hi_ + beta_;
        Integer fa = floor_rat(a);
        Integer fb = (denominator(b) == 1) ? numerator(b) - 1 : floor_rat(b);
        if (n == 0) return floor_rat(beta_); // = 0 after normalization
        if (fa != fb) return std::nullopt;
        return fa;
    }

    // eps_n = floor((n+1)a + b) - floor(na + b) - floor(b).
    int digit(std::size_t n) const {
        auto f0 = floor_linear(n), f1 = floor_linear(n + 1);
        if (!f0 || !f1) throw error("refine alpha");
        Integer d = *f1 - *f0;
        if (d < 0 || d > 1)
            throw internal_error("mechanical digit outside {0,1}");
        return static_cast<int>(d);
    }

private:
    std::vector<unsigned> quotients_;
    Rational beta_;
    Rational lo_, hi_; // open interval pinning alpha
};

inline BinaryWord sturmian_prefix(const SturmianParams& params, std::size_t n) {
    std::string bits;
    bits.reserve(n);
    for (std::size_t i = 0; i < n; ++i) bits += params.digit(i) == 1 ? '1' : '0';
    return BinaryWord(std::move(bits));
}

// Immutable symbol source over {0,1}; wraps a finite word (bounded),
// an eventually periodic expansion, or mechanical-word parameters.
class SymbolStream {
public:
    static SymbolStream from_word(BinaryWord w) {
        auto data = std::make_shared<BinaryWord>(std::move(w));
        return SymbolStream([data](std::size_t n) {
            if (n >= data->size()) throw hypothesis_error("stream index past end of word");
            return data->digit(n);
        });
    }

    static SymbolStream from_expansion(Expansion e) {
        auto data = std::make_shared<Expansion>(std::move(e));
        return SymbolStream([data](std::size_t n) { return data->digit(n); });
    }

    static SymbolStream sturmian(SturmianParams params) {
        auto data = std::make_shared<SturmianParams>(std::move(params));
        return SymbolStream([data](std::size_t n) { return data->digit(n); });
    }

    int symbol(std::size_t n) const { return at_(n); }

    BinaryWord prefix(std::size_t n) const {
        std::string bits;
        bits.reserve(n);
        for (std::size_t i = 0; i < n; ++i) bits += at_(i) == 1 ? '1' : '0';
        return BinaryWord(std::move(bits));
    }

    SymbolStream shifted(std::size_t k) const {
        auto base = at_;
        return SymbolStream([base, k](std::size_t n) { return base(n + k); });
    }

    // The arithmetic-progression subsequence n -> s_{i + n p}.
    SymbolStream subsequence(std::size_t i, std::size_t p) const {
        if (p == 0) throw hypothesis_error("subsequence step must be positive");
        auto base = at_;
        return SymbolStream([base, i, p](std::size_t n) { return base(i + n * p); });
    }

private:
    explicit SymbolStream(std::function<int(std::size_t)> at) : at_(std::move(at)) {}

    std::function<int(std::size_t)> at_;
};

// Finite-depth distinctness of all arithmetic-progression subsequences
// (s_{i+np}) with 1 <= p <= p_max, 0 <= i < p.  diverse = true means
// no two agreed on every compared index below the horizon; a false
// result carries the first colliding pair in (p, i) order.
struct DiversityResult {
    bool diverse = true;
    std::size_t i = 0, p = 0, j = 0, q = 0; // witness when !diverse
};

inline DiversityResult max_diverse_check(const SymbolStream& s, std::size_t p_max,
                                         std::size_t horizon) {
    if (p_max == 0) throw hypothesis_error("subsequence step bound must be positive");
    if (horizon < p_max * p_max)
        throw hypothesis_error("horizon must be at least p_max^2");

    std::vector<int> pre(horizon);
    for (std::size_t n = 0; n < horizon; ++n) pre[n] = s.symbol(n);

    for (std::size_t p = 1; p <= p_max; ++p)
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t q = p; q <= p_max; ++q)
                for (std::size_t j = (q == p ? i + 1 : 0); j < q; ++j) {
                    bool equal = true;
                    for (std::size_t n = 0; i + n * p < horizon && j + n * q < horizon; ++n)
                        if (pre[i + n * p] != pre[j + n * q]) {
                            equal = false;
                            break;
                        }
                    if (equal) return DiversityResult{false, i, p, j, q};
                }
    return DiversityResult{};
}

// Decomposition of an eventually periodic digit stream into length-q
// blocks drawn from {z0, z1}, read from position 0.  Exact: once the
// block offset into the period repeats, the block sequence repeats,
// so the result is returned as a canonical expansion (its digits are
// the block indices).
inline std::optional<Expansion> tuned_decomposition(const Expansion& sigma,
                                                    const BinaryWord& z0,
                                                    const BinaryWord& z1) {
    std::size_t q = z0.size();
    if (q == 0 || z1.size() != q) throw hypothesis_error("block words must share a length >= 1");
    if (z0 == z1) throw hypothesis_error("block words must differ");

    std::size_t n = sigma.preperiod().size();
    std::size_t period_len = sigma.period().size();

    std::string indices;
    std::map<std::size_t, std::size_t> first_block_at_offset;
    for (std::size_t t = 0;; ++t) {
        std::size_t start = t * q;
        if (start >= n) {
            std::size_t offset = (start - n) % period_len;
            auto [it, fresh] = first_block_at_offset.emplace(offset, t);
            if (!fresh) {
                std::size_t t0 = it->second;
                Expansion blocks = Expansion::from_words(
                    BinaryWord(indices.substr(0, t0)),
                    BinaryWord(indices.substr(t0, t - t0)));
                return blocks;
            }
        }
        bool m0 = true, m1 = true;
        for (std::size_t r = 0; r < q && (m0 || m1); ++r) {
            int d = sigma.digit(start + r);
            m0 = m0 && d == z0.digit(r);
            m1 = m1 && d == z1.digit(r);
        }
        if (m0) indices += '0';
        else if (m1) indices += '1';
        else return std::nullopt;
    }
}

// Horizon-bounded variant for symbolic streams: decomposes the first
// floor(horizon / q) blocks only; a success certifies nothing past the
// horizon.
inline std::optional<BinaryWord> tuned_decomposition(const SymbolStream& s,
                                                     std::size_t horizon,
                                                     const BinaryWord& z0,
                                                     const BinaryWord& z1) {
    std::size_t q = z0.size();
    if (q == 0 || z1.size() != q) throw hypothesis_error("block words must share a length >= 1");
    if (z0 == z1) throw hypothesis_error("block words must differ");

    std::string indices;
    for (std::size_t start = 0; start + q <= horizon; start += q) {
        bool m0 = true, m1 = true;
        for (std::size_t r = 0; r < q && (m0 || m1); ++r) {
            int d = s.symbol(start + r);
            m0 = m0 && d == z0.digit(r);
            m1 = m1 && d == z1.digit(r);
        }
        if (m0) indices += '0';
        else if (m1) indices += '1';
        else return std::nullopt;
    }
    return BinaryWord(std::move(indices));
}

// Scan for a ray-pair word pair (period 2..max_q) whose blocks exactly
// tile the expansion; the first hit in (period, angle) order is the
// witness.  With |require_complement| only pairs of complementary
// words are tried.
struct RenormResult {
    bool renormalizable = false;
    std::optional<RayPair> witness;
};

inline RenormResult is_renormalizable(const Expansion& sigma, std::size_t max_q,
                                      const RayPairTable& pairs,
                                      bool require_complement = false) {
    if (max_q < 2) throw hypothesis_error("renormalization scan needs max_q >= 2");
    if (pairs.max_period() < max_q)
        throw hypothesis_error("ray pair table does not cover the requested periods");

    for (const RayPair& rp : pairs.pairs()) {
        if (rp.period < 2 || rp.period > max_q) continue;
        if (require_complement && rp.word_upper != rp.word_lower.complemented()) continue;
        if (tuned_decomposition(sigma, rp.word_lower, rp.word_upper))
            return RenormResult{true, rp};
    }
    return RenormResult{};
}

} // namespace magic_angles
