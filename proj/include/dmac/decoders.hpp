#pragma once

// Decoders for the stacked KS construction.
//
// ExhaustiveDecoder checks the cover condition T AND Y == T for every
// codeword; a unique survivor decodes, two or more is a failure. Because the
// channel never clears a transmitted 1, the sent codeword always satisfies
// the condition, so a wrong unique answer is structurally impossible.
//
// ConcatenatedCode pairs an outer (m, kO) code over GF(q^kI) with an inner
// (t, kI) code over GF(q); inner blocks decode independently by exhaustive
// search (ambiguity becomes an outer erasure) and the outer code corrects
// the erasures by Gaussian elimination.

#include "dmac/codes.hpp"
#include "dmac/ks.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dmac {

enum class DecodeStatus { Decoded, Failure };

/// Count mode stops scanning candidates as soon as ambiguity is certain;
/// Collect mode keeps the full candidate list.
enum class CandidatePolicy { CountOnly, Collect };

struct DecodeOutcome {
    DecodeStatus status = DecodeStatus::Failure;
    Codeword word;                     // the decoded codeword, when Decoded
    Codeword message;                  // its message, when the decoder knows it
    uint64_t candidate_count = 0;      // exact under Collect; under CountOnly
                                       // capped at 2
    std::vector<Codeword> candidates;  // filled under Collect

    bool decoded() const { return status == DecodeStatus::Decoded; }
};

struct KsLayout {
    uint32_t m = 1, t = 1, Q = 0;
};

/// Exhaustive cover-condition decoder with the codebook's stacked row
/// indices cached up front.
class ExhaustiveDecoder {
  public:
    ExhaustiveDecoder(const LinearCode& code, KsLayout layout,
                      uint64_t enum_limit = kDefaultEnumLimit)
        : code_(&code), layout_(layout) {
        const uint32_t q = static_cast<uint32_t>(code.field()->order());
        if (code.blocklength() != static_cast<uint64_t>(layout.m) * layout.t)
            throw std::invalid_argument("code blocklength must equal m*t");
        if (static_cast<uint64_t>(layout.m) * q > layout.Q)
            throw std::invalid_argument("stack does not fit: m*q > Q");
        const uint64_t count = code.codeword_count(enum_limit);
        words_.reserve(count);
        rows_.reserve(count);
        messages_.reserve(count);
        const Field& f = *code.field();
        code.for_each_codeword(
            [&](const Codeword& msg, const Codeword& cw) {
                std::vector<uint32_t> rows(cw.size());
                for (uint32_t j = 0; j < layout.m; ++j)
                    for (uint32_t tau = 0; tau < layout.t; ++tau) {
                        const size_t pos = static_cast<size_t>(j) * layout.t + tau;
                        rows[pos] = j * q + static_cast<uint32_t>(f.index_of(cw[pos]));
                    }
                words_.push_back(cw);
                rows_.push_back(std::move(rows));
                messages_.push_back(msg);
            },
            enum_limit);
    }

    const LinearCode& code() const { return *code_; }
    const KsLayout& layout() const { return layout_; }

    DecodeOutcome decode(const BitMatrix& y,
                         CandidatePolicy policy = CandidatePolicy::CountOnly) const {
        if (y.rows() != layout_.Q || y.cols() != layout_.t)
            throw std::invalid_argument("received matrix dimension mismatch");
        DecodeOutcome out;
        size_t first = 0;
        for (size_t w = 0; w < words_.size(); ++w) {
            if (!covered(w, y)) continue;
            ++out.candidate_count;
            if (out.candidate_count == 1) first = w;
            if (policy == CandidatePolicy::Collect)
                out.candidates.push_back(words_[w]);
            else if (out.candidate_count >= 2)
                break;
        }
        if (out.candidate_count == 1) {
            out.status = DecodeStatus::Decoded;
            out.word = words_[first];
            out.message = messages_[first];
        }
        return out;
    }

  private:
    bool covered(size_t w, const BitMatrix& y) const {
        const auto& rows = rows_[w];
        for (size_t pos = 0; pos < rows.size(); ++pos)
            if (!y.get(rows[pos], pos % layout_.t)) return false;
        return true;
    }

    const LinearCode* code_;
    KsLayout layout_;
    std::vector<Codeword> words_;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<Codeword> messages_;
};

/// Outer (m, kO) code over GF(q^kI) concatenated with an inner (t, kI) code
/// over GF(q). An outer symbol bridges to an inner message through its
/// coefficient vector over GF(q).
class ConcatenatedCode {
  public:
    static ConcatenatedCode make(const FieldPtr& symbol_field, uint32_t t, uint32_t k_inner,
                                 uint32_t m, uint32_t k_outer) {
        FieldPtr outer_field = Field::extension_of(symbol_field, k_inner);
        if (m > outer_field->order())
            throw std::invalid_argument("outer blocklength exceeds outer field order q^kI");
        return ConcatenatedCode(LinearCode::reed_solomon(outer_field, m, k_outer),
                                LinearCode::reed_solomon(symbol_field, t, k_inner));
    }

    ConcatenatedCode(LinearCode outer, LinearCode inner)
        : outer_(std::move(outer)), inner_(std::move(inner)) {
        if (inner_.dimension() >= 2 &&
            (outer_.field()->base() != inner_.field() ||
             outer_.field()->degree() != inner_.dimension()))
            throw std::invalid_argument("outer field must be the degree-kI extension of the inner field");
        if (inner_.dimension() == 1 && outer_.field() != inner_.field())
            throw std::invalid_argument("with kI = 1 the outer and inner fields must coincide");
    }

    const LinearCode& outer() const { return outer_; }
    const LinearCode& inner() const { return inner_; }
    uint32_t m() const { return outer_.blocklength(); }
    uint32_t t() const { return inner_.blocklength(); }
    uint32_t k_inner() const { return inner_.dimension(); }
    uint32_t k_outer() const { return outer_.dimension(); }
    /// Total length in GF(q) symbols, m*t.
    uint64_t blocklength() const { return static_cast<uint64_t>(m()) * t(); }
    /// Total dimension in GF(q) symbols, kO*kI.
    uint64_t dimension() const { return static_cast<uint64_t>(k_outer()) * k_inner(); }

    Codeword bridge_split(uint32_t outer_symbol) const {
        if (k_inner() == 1) return Codeword{outer_symbol};
        return outer_.field()->to_base_coeffs(outer_symbol);
    }
    uint32_t bridge_join(const Codeword& inner_message) const {
        if (inner_message.size() != k_inner())
            throw std::invalid_argument("inner message length mismatch");
        if (k_inner() == 1) return inner_message[0];
        return outer_.field()->from_base_coeffs(inner_message);
    }

    /// Outer encode, bridge each outer symbol to an inner message, inner
    /// encode; inner codeword j occupies positions [j*t, (j+1)*t).
    Codeword encode(const Codeword& outer_message) const {
        const Codeword osym = outer_.encode(outer_message);
        Codeword cw(blocklength());
        for (uint32_t j = 0; j < m(); ++j) {
            const Codeword block = inner_.encode(bridge_split(osym[j]));
            std::copy(block.begin(), block.end(), cw.begin() + static_cast<size_t>(j) * t());
        }
        return cw;
    }

  private:
    LinearCode outer_;
    LinearCode inner_;
};

/// Exhaustive cover-condition decoder for one subrange block. A unique
/// surviving inner codeword yields the bridged outer symbol; anything else
/// is an erasure. The true inner codeword always survives, so a non-erased
/// output is always correct.
class InnerDecoder {
  public:
    InnerDecoder(const ConcatenatedCode& cc, uint64_t enum_limit = kDefaultEnumLimit)
        : cc_(&cc) {
        const Field& f = *cc.inner().field();
        cc.inner().for_each_codeword(
            [&](const Codeword& msg, const Codeword& cw) {
                std::vector<uint32_t> rows(cw.size());
                for (size_t tau = 0; tau < cw.size(); ++tau)
                    rows[tau] = static_cast<uint32_t>(f.index_of(cw[tau]));
                rows_.push_back(std::move(rows));
                symbols_.push_back(cc.bridge_join(msg));
            },
            enum_limit);
    }

    /// Decode subrange `block` of the full Q x t received matrix; nullopt is
    /// an erasure.
    std::optional<uint32_t> decode_block(const BitMatrix& y, uint32_t block) const {
        const uint32_t q = static_cast<uint32_t>(cc_->inner().field()->order());
        const uint32_t base = block * q;
        if (y.cols() != cc_->t() || base + q > y.rows())
            throw std::invalid_argument("received matrix dimension mismatch");
        size_t hits = 0, first = 0;
        for (size_t w = 0; w < rows_.size(); ++w) {
            bool ok = true;
            const auto& rows = rows_[w];
            for (uint32_t tau = 0; tau < cc_->t() && ok; ++tau)
                ok = y.get(base + rows[tau], tau);
            if (!ok) continue;
            if (++hits >= 2) return std::nullopt;
            first = w;
        }
        if (hits != 1) return std::nullopt;
        return symbols_[first];
    }

  private:
    const ConcatenatedCode* cc_;
    std::vector<std::vector<uint32_t>> rows_;
    std::vector<uint32_t> symbols_;
};

/// Inner-decode all m blocks, then erase-correct with the outer code.
/// Never returns a wrong codeword: inner outputs are correct-or-erased and
/// outer erasure decoding of correct symbols is exact.
inline DecodeOutcome concat_decode(const BitMatrix& y, const ConcatenatedCode& cc,
                                   const InnerDecoder& inner, uint32_t* erasures_out = nullptr) {
    Codeword received(cc.m(), kErased);
    uint32_t erasures = 0;
    for (uint32_t j = 0; j < cc.m(); ++j) {
        const auto sym = inner.decode_block(y, j);
        if (sym.has_value())
            received[j] = *sym;
        else
            ++erasures;
    }
    if (erasures_out != nullptr) *erasures_out = erasures;
    DecodeOutcome out;
    Codeword outer_msg;
    const auto outer_cw = cc.outer().erasure_decode(received, &outer_msg);
    if (outer_cw.has_value()) {
        out.status = DecodeStatus::Decoded;
        out.word = cc.encode(outer_msg);
        out.message = std::move(outer_msg);
        out.candidate_count = 1;
    }
    return out;
}

}  // namespace dmac
