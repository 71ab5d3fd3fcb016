#pragma once

// Linear block codes over a finite field: Reed-Solomon evaluation codes,
// random systematic codes, codeword enumeration, weight distributions
// (analytic for MDS codes, brute force otherwise) and erasure decoding by
// Gaussian elimination on the generator submatrix.

#include "dmac/field.hpp"
#include "dmac/numeric.hpp"
#include "dmac/rng.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace dmac {

inline constexpr uint64_t kDefaultEnumLimit = 1ull << 24;

struct WeightDistribution {
    std::vector<BigInt> counts;  // counts[w] = number of codewords of weight w

    uint32_t blocklength() const { return static_cast<uint32_t>(counts.size()) - 1; }
    BigInt total() const {
        BigInt s = 0;
        for (const auto& c : counts) s += c;
        return s;
    }
};

class LinearCode {
  public:
    /// Evaluation Reed-Solomon code: the message polynomial of degree < k is
    /// evaluated at the first n nonzero canonical field elements (the zero
    /// element is appended as the last point when n equals the field order).
    /// MDS with d = n - k + 1.
    static LinearCode reed_solomon(const FieldPtr& field, uint32_t n, uint32_t k) {
        if (k < 1 || k > n) throw std::invalid_argument("require 1 <= k <= n");
        if (n > field->order())
            throw std::invalid_argument("blocklength exceeds field order");
        std::vector<uint32_t> pts(n);
        for (uint32_t j = 0; j < n; ++j)
            pts[j] = field->element_at((j + 1) % field->order());
        std::vector<uint32_t> gen(static_cast<size_t>(k) * n);
        for (uint32_t j = 0; j < n; ++j) {
            uint32_t p = 1;
            for (uint32_t i = 0; i < k; ++i) {
                gen[static_cast<size_t>(i) * n + j] = p;
                p = field->mul(p, pts[j]);
            }
        }
        LinearCode c(field, n, k, std::move(gen));
        c.d_ = n - k + 1;
        c.mds_ = true;
        c.eval_points_ = std::move(pts);
        return c;
    }

    /// Systematic code with a random parity part. The minimum distance is
    /// found by enumeration when q^k fits under `enum_limit`, else left 0
    /// (unknown).
    static LinearCode random_systematic(const FieldPtr& field, uint32_t n, uint32_t k,
                                        uint64_t seed, uint64_t enum_limit = kDefaultEnumLimit) {
        if (k < 1 || k > n) throw std::invalid_argument("require 1 <= k <= n");
        std::vector<uint32_t> gen(static_cast<size_t>(k) * n, 0);
        Rng rng(derive_seed(seed, 0x67656eULL));
        for (uint32_t i = 0; i < k; ++i) {
            gen[static_cast<size_t>(i) * n + i] = 1;
            for (uint32_t j = k; j < n; ++j)
                gen[static_cast<size_t>(i) * n + j] =
                    static_cast<uint32_t>(rng.below(field->order()));
        }
        LinearCode c(field, n, k, std::move(gen));
        if (c.enumeration_feasible(enum_limit)) {
            uint32_t dmin = n + 1;
            c.for_each_codeword([&](const Codeword&, const Codeword& cw) {
                uint32_t w = 0;
                for (uint32_t v : cw) w += v != 0;
                if (w != 0 && w < dmin) dmin = w;
            });
            c.d_ = dmin;
            c.mds_ = (dmin == n - k + 1);
        }
        return c;
    }

    static LinearCode from_generator(const FieldPtr& field, uint32_t n, uint32_t k,
                                     std::vector<uint32_t> gen, uint32_t d = 0) {
        if (gen.size() != static_cast<size_t>(k) * n)
            throw std::invalid_argument("generator size mismatch");
        LinearCode c(field, n, k, std::move(gen));
        c.d_ = d;
        return c;
    }

    const FieldPtr& field() const { return field_; }
    uint32_t blocklength() const { return n_; }
    uint32_t dimension() const { return k_; }
    /// Minimum distance; 0 when unknown.
    uint32_t distance() const { return d_; }
    bool is_mds() const { return mds_; }
    /// RS evaluation points (empty for non-RS constructions).
    const std::vector<uint32_t>& eval_points() const { return eval_points_; }
    uint32_t generator_entry(uint32_t i, uint32_t j) const {
        return gen_[static_cast<size_t>(i) * n_ + j];
    }

    bool enumeration_feasible(uint64_t limit = kDefaultEnumLimit) const {
        uint64_t count = 1;
        for (uint32_t i = 0; i < k_; ++i) {
            if (count > limit / field_->order()) return false;
            count *= field_->order();
        }
        return count <= limit;
    }

    /// q^k; throws when it does not fit the enumeration limit.
    uint64_t codeword_count(uint64_t limit = kDefaultEnumLimit) const {
        if (!enumeration_feasible(limit))
            throw std::domain_error("codeword enumeration limit exceeded");
        uint64_t count = 1;
        for (uint32_t i = 0; i < k_; ++i) count *= field_->order();
        return count;
    }

    Codeword encode(const Codeword& message) const {
        if (message.size() != k_) throw std::invalid_argument("message length mismatch");
        Codeword cw(n_, 0);
        for (uint32_t i = 0; i < k_; ++i) {
            const uint32_t mi = message[i];
            if (mi == 0) continue;
            const uint32_t* row = gen_.data() + static_cast<size_t>(i) * n_;
            for (uint32_t j = 0; j < n_; ++j)
                if (row[j] != 0) cw[j] = field_->add(cw[j], field_->mul(mi, row[j]));
        }
        return cw;
    }

    /// Visits every codeword exactly once, all-zero word first.
    /// fn(message, codeword).
    template <class F>
    void for_each_codeword(F&& fn, uint64_t limit = kDefaultEnumLimit) const {
        const uint64_t count = codeword_count(limit);
        Codeword msg(k_, 0);
        for (uint64_t idx = 0;; ++idx) {
            fn(static_cast<const Codeword&>(msg), encode(msg));
            if (idx + 1 == count) break;
            for (uint32_t i = 0; i < k_; ++i) {  // base-q odometer
                if (++msg[i] < field_->order()) break;
                msg[i] = 0;
            }
        }
    }

    std::vector<Codeword> all_codewords(uint64_t limit = kDefaultEnumLimit) const {
        std::vector<Codeword> out;
        out.reserve(codeword_count(limit));
        for_each_codeword([&](const Codeword&, const Codeword& cw) { out.push_back(cw); }, limit);
        return out;
    }

    /// Analytic (MDS) path when available, enumeration otherwise.
    WeightDistribution weight_distribution(uint64_t enum_limit = kDefaultEnumLimit) const {
        if (mds_ && d_ > 0) return mds_weight_distribution();
        if (enumeration_feasible(enum_limit)) {
            WeightDistribution wd;
            wd.counts.assign(n_ + 1, 0);
            for_each_codeword([&](const Codeword&, const Codeword& cw) {
                uint32_t w = 0;
                for (uint32_t v : cw) w += v != 0;
                ++wd.counts[w];
            });
            return wd;
        }
        throw std::domain_error("weight distribution unavailable: not MDS and enumeration infeasible");
    }

    /// Recovers the unique codeword agreeing with `received` on all
    /// non-erased positions (kErased marks erasures), or nullopt when the
    /// known positions do not pin the message down. When the input is
    /// consistent with some codeword, success is guaranteed for up to d-1
    /// erasures (n-k for MDS codes).
    std::optional<Codeword> erasure_decode(const Codeword& received,
                                           Codeword* message_out = nullptr) const {
        if (received.size() != n_) throw std::invalid_argument("received length mismatch");
        std::vector<uint32_t> known;
        for (uint32_t j = 0; j < n_; ++j) {
            if (received[j] == kErased) continue;
            if (received[j] >= field_->order())
                throw std::invalid_argument("received symbol out of field range");
            known.push_back(j);
        }
        if (known.size() < k_) return std::nullopt;
        // solve m * G_J = r_J by eliminating the |J| x (k+1) augmented system
        const size_t rows = known.size(), cols = k_ + 1;
        std::vector<uint32_t> a(rows * cols);
        for (size_t r = 0; r < rows; ++r) {
            for (uint32_t i = 0; i < k_; ++i)
                a[r * cols + i] = gen_[static_cast<size_t>(i) * n_ + known[r]];
            a[r * cols + k_] = received[known[r]];
        }
        size_t rank = 0;
        std::vector<uint32_t> pivot_col;
        for (uint32_t c = 0; c < k_ && rank < rows; ++c) {
            size_t piv = rows;
            for (size_t r = rank; r < rows; ++r)
                if (a[r * cols + c] != 0) { piv = r; break; }
            if (piv == rows) continue;
            for (size_t j = 0; j < cols; ++j) std::swap(a[rank * cols + j], a[piv * cols + j]);
            const uint32_t ip = field_->inv(a[rank * cols + c]);
            for (size_t j = c; j < cols; ++j)
                a[rank * cols + j] = field_->mul(a[rank * cols + j], ip);
            for (size_t r = 0; r < rows; ++r) {
                if (r == rank) continue;
                const uint32_t f = a[r * cols + c];
                if (f == 0) continue;
                for (size_t j = c; j < cols; ++j)
                    a[r * cols + j] = field_->sub(a[r * cols + j], field_->mul(f, a[rank * cols + j]));
            }
            pivot_col.push_back(c);
            ++rank;
        }
        if (rank < k_) return std::nullopt;
        for (size_t r = rank; r < rows; ++r)  // inconsistent leftover row
            if (a[r * cols + k_] != 0) return std::nullopt;
        Codeword msg(k_, 0);
        for (size_t r = 0; r < rank; ++r) msg[pivot_col[r]] = a[r * cols + k_];
        Codeword cw = encode(msg);
        for (uint32_t j : known)  // consistency with the non-erased positions
            if (cw[j] != received[j]) return std::nullopt;
        if (message_out != nullptr) *message_out = std::move(msg);
        return cw;
    }

  private:
    LinearCode(FieldPtr field, uint32_t n, uint32_t k, std::vector<uint32_t> gen)
        : field_(std::move(field)), n_(n), k_(k), gen_(std::move(gen)) {}

    WeightDistribution mds_weight_distribution() const {
        // A(W) = C(n,W) * sum_{j=0}^{W-d} (-1)^j C(W,j) (q^(W-d+1-j) - 1)
        WeightDistribution wd;
        wd.counts.assign(n_ + 1, 0);
        wd.counts[0] = 1;
        const uint64_t q = field_->order();
        for (uint32_t w = d_; w <= n_; ++w) {
            BigInt s = 0;
            for (uint32_t j = 0; j <= w - d_; ++j) {
                const BigInt term = binomial_big(w, j) * (pow_big(q, w - d_ + 1 - j) - 1);
                if (j % 2 == 0)
                    s += term;
                else
                    s -= term;
            }
            wd.counts[w] = binomial_big(n_, w) * s;
            if (wd.counts[w] < 0) throw std::logic_error("negative weight count");
        }
        return wd;
    }

    FieldPtr field_;
    uint32_t n_ = 0, k_ = 0, d_ = 0;
    bool mds_ = false;
    std::vector<uint32_t> gen_;  // k x n row-major
    std::vector<uint32_t> eval_points_;
};

/// Smallest n with q^(n-k) >= sum_{i=0}^{d-2} C(n-1,i)(q-1)^i, i.e. the
/// Gilbert-Varshamov existence condition, by exact big-integer search.
/// The search starts at max(k, d); below that the inequality can hold
/// vacuously for parameter sets no code can meet.
inline uint64_t gv_exact_n(const FieldPtr& field, uint32_t k, uint32_t d) {
    if (k < 1 || d < 1) throw std::invalid_argument("require k >= 1 and d >= 1");
    const uint64_t q = field->order();
    for (uint64_t n = std::max<uint64_t>(k, d);; ++n) {
        BigInt sum = 0;
        for (uint32_t i = 0; i + 2 <= d; ++i)
            sum += binomial_big(n - 1, i) * pow_big(q - 1, i);
        if (pow_big(q, n - k) >= sum) return n;
        if (n > static_cast<uint64_t>(k) + 64ull * d + 64)
            throw std::logic_error("gv_exact_n search did not converge");
    }
}

}  // namespace dmac
