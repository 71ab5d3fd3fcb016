#pragma once

// The Q-subchannel noiseless OR channel with per-tact random permutations.
//
// Each user permutes its Q-bit frame with a fresh uniform permutation every
// tact (known only to its transmitter-receiver pair); the channel output is
// the elementwise OR across users; the receiver undoes the target user's
// permutation, so the target's ones always survive and interference lands
// uniformly. Two interference models are provided: FullStream is the
// literal picture (interferers continuously transmit their own KS-encoded
// codeword streams with arbitrary tact offsets), IidSubset draws a uniform
// weight-m frame per interferer and tact. Both induce the same per-position
// coverage distribution.

#include "dmac/ks.hpp"
#include "dmac/params.hpp"
#include "dmac/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace dmac {

using TactFrame = BitVec;
using Permutation = std::vector<uint32_t>;

inline Permutation identity_permutation(uint32_t n) {
    Permutation p(n);
    for (uint32_t i = 0; i < n; ++i) p[i] = i;
    return p;
}

inline Permutation inverse_of(const Permutation& p) {
    Permutation inv(p.size());
    for (uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return inv;
}

/// out[p[i]] = in[i]
inline TactFrame permute(const TactFrame& frame, const Permutation& p) {
    if (frame.size() != p.size()) throw std::invalid_argument("permutation length mismatch");
    TactFrame out(frame.size());
    frame.for_each_set([&](size_t i) { out.set(p[i]); });
    return out;
}

/// out[i] = in[p[i]]
inline TactFrame inverse_permute(const TactFrame& frame, const Permutation& p) {
    if (frame.size() != p.size()) throw std::invalid_argument("permutation length mismatch");
    TactFrame out(frame.size());
    for (size_t i = 0; i < p.size(); ++i)
        if (frame.get(p[i])) out.set(i);
    return out;
}

/// Deterministic stream of independent uniform permutations of [0, Q),
/// one per tact; identical (seed, Q, tact) always reproduce the same one.
class PermutationSchedule {
  public:
    PermutationSchedule(uint64_t seed, uint32_t Q) : seed_(seed), q_(Q) {}

    uint64_t seed() const { return seed_; }
    uint32_t Q() const { return q_; }

    Permutation permutation(uint64_t tact) const {
        Rng rng(derive_seed(seed_, tact));
        return rng.permutation(q_);
    }

  private:
    uint64_t seed_;
    uint32_t q_;
};

/// Channel-domain frames of one user's stacked block, tact tau permuted by
/// schedule[tact0 + tau].
inline std::vector<TactFrame> transmit_user(const StackedFrameBlock& block,
                                            const PermutationSchedule& schedule,
                                            uint64_t tact0 = 0) {
    if (schedule.Q() != block.Q) throw std::invalid_argument("schedule Q mismatch");
    std::vector<TactFrame> frames;
    frames.reserve(block.t);
    for (uint32_t tau = 0; tau < block.t; ++tau) {
        const Permutation p = schedule.permutation(tact0 + tau);
        TactFrame f(block.Q);
        for (uint32_t r : block.col_rows[tau]) f.set(p[r]);
        frames.push_back(std::move(f));
    }
    return frames;
}

/// Elementwise OR across users for one tact.
inline TactFrame superpose(const std::vector<TactFrame>& user_frames) {
    if (user_frames.empty()) throw std::invalid_argument("superpose of zero users");
    TactFrame out = user_frames[0];
    for (size_t i = 1; i < user_frames.size(); ++i) out.or_with(user_frames[i]);
    return out;
}

/// OR of per-user tact sequences: out[tau] = OR_i streams[i][tau].
inline std::vector<TactFrame> superpose_streams(const std::vector<std::vector<TactFrame>>& streams) {
    if (streams.empty()) throw std::invalid_argument("superpose of zero users");
    const size_t t = streams[0].size();
    std::vector<TactFrame> out = streams[0];
    for (size_t i = 1; i < streams.size(); ++i) {
        if (streams[i].size() != t) throw std::invalid_argument("stream length mismatch");
        for (size_t tau = 0; tau < t; ++tau) out[tau].or_with(streams[i][tau]);
    }
    return out;
}

/// Receiver side: undo the target's permutations; column tau of the result
/// is the de-permuted channel output of tact tau.
inline BitMatrix receive(const std::vector<TactFrame>& channel_out,
                         const PermutationSchedule& target_schedule, uint64_t tact0 = 0) {
    const uint32_t q = target_schedule.Q();
    BitMatrix y(q, channel_out.size());
    for (size_t tau = 0; tau < channel_out.size(); ++tau) {
        const Permutation p = target_schedule.permutation(tact0 + tau);
        y.column(tau) = inverse_permute(channel_out[tau], p);
    }
    return y;
}

enum class InterferenceModel { FullStream, IidSubset };

struct ChannelScenario {
    SystemParams params;
    InterferenceModel model = InterferenceModel::IidSubset;
    uint64_t seed = 1;
    uint32_t target = 0;

    void validate() const {
        params.validate();
        if (target >= params.S) throw std::invalid_argument("target user index out of range");
    }
};

/// Draws the codewords interfering users keep transmitting: a length-(m*t)
/// symbol vector over the shared alphabet field.
struct CodewordSampler {
    const Field* field = nullptr;
    std::function<Codeword(Rng&)> draw;
};

/// Channel-domain interference of one non-target user. FullStream carries a
/// KS-encoded stream (two consecutive random codewords crossing a boundary
/// at a random or forced tact offset) under the user's own per-tact
/// permutations; IidSubset emits an independent uniform weight-m frame per
/// tact. Frames are a pure function of (user_seed, tact).
class InterferenceSource {
  public:
    static constexpr int kRandomOffset = -1;

    InterferenceSource(const SystemParams& params, InterferenceModel model, uint64_t user_seed,
                       const CodewordSampler* sampler = nullptr,
                       int forced_offset = kRandomOffset)
        : params_(params), model_(model), user_seed_(user_seed) {
        if (model_ == InterferenceModel::FullStream) {
            if (sampler == nullptr || sampler->field == nullptr || !sampler->draw)
                throw std::invalid_argument("FullStream interference needs a codeword sampler");
            Rng rng(derive_seed(user_seed_, 0x73747265616dULL));
            offset_ = forced_offset == kRandomOffset
                          ? static_cast<uint32_t>(rng.below(params.t))
                          : static_cast<uint32_t>(forced_offset % params.t);
            schedule_ = PermutationSchedule(derive_seed(user_seed_, 0x7363686564ULL),
                                            static_cast<uint32_t>(params.Q));
            for (int w = 0; w < 2; ++w) {
                const Codeword cw = sampler->draw(rng);
                if (cw.size() != params.n())
                    throw std::invalid_argument("sampled codeword length must equal m*t");
                blocks_.push_back(stack(ks_encode(*sampler->field, cw), params.m, params.t,
                                        static_cast<uint32_t>(params.Q)));
            }
        }
    }

    uint32_t offset() const { return offset_; }

    TactFrame frame(uint64_t tact) const {
        TactFrame f(params_.Q);
        if (model_ == InterferenceModel::IidSubset) {
            Rng rng(derive_seed(user_seed_, 0x696964ULL + tact));
            for (uint32_t r : rng.sample_distinct(params_.m, static_cast<uint32_t>(params_.Q)))
                f.set(r);
            return f;
        }
        const uint64_t idx = tact + offset_;
        const StackedFrameBlock& b = blocks_[idx >= params_.t ? 1 : 0];
        const Permutation p = schedule_.permutation(tact);
        for (uint32_t r : b.col_rows[idx % params_.t]) f.set(p[r]);
        return f;
    }

  private:
    SystemParams params_;
    InterferenceModel model_;
    uint64_t user_seed_;
    uint32_t offset_ = 0;
    PermutationSchedule schedule_{0, 0};
    std::vector<StackedFrameBlock> blocks_;
};

}  // namespace dmac
