#pragma once

// Monte-Carlo campaigns over the permuted OR channel. Trials are a pure
// function of (campaign seed, trial index): every schedule, message and
// interference draw derives from that pair, so aggregates are independent of
// the worker count and per-trial records can be regenerated bit-for-bit.

#include "dmac/bounds.hpp"
#include "dmac/channel.hpp"
#include "dmac/decoders.hpp"

#include <chrono>
#include <memory>
#include <thread>

namespace dmac {

enum class DecoderKind { Exhaustive, Concatenated };

struct SimScenario {
    SystemParams params;
    InterferenceModel model = InterferenceModel::IidSubset;
    DecoderKind decoder = DecoderKind::Exhaustive;
    uint32_t k_inner = 1;  // concatenated decoder only
    uint32_t k_outer = 1;
    uint64_t trials = 1000;
    uint64_t seed = 1;
    uint32_t jobs = 0;  // 0 = hardware concurrency
};

struct TrialRecord {
    uint64_t index = 0;
    bool failure = false;
    uint64_t candidates = 0;
    uint64_t seed = 0;
};

struct CampaignResult {
    uint64_t trials = 0;
    uint64_t failures = 0;
    uint64_t wrong_words = 0;       // decoded to a codeword other than the sent one
    uint64_t cover_violations = 0;  // sent ones missing from the received matrix
    uint64_t inner_blocks = 0;      // concatenated decoder only
    uint64_t inner_erasures = 0;
    double elapsed_s = 0;
    std::vector<TrialRecord> records;

    double failure_rate() const {
        return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
    }
    double inner_erasure_rate() const {
        return inner_blocks == 0
                   ? 0.0
                   : static_cast<double>(inner_erasures) / static_cast<double>(inner_blocks);
    }
};

/// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(uint64_t successes, uint64_t n, double z = 1.96) {
    if (n == 0) return {0.0, 1.0};
    const double phat = static_cast<double>(successes) / static_cast<double>(n);
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

inline CodewordSampler sampler_for_code(const LinearCode& code) {
    CodewordSampler s;
    s.field = code.field().get();
    s.draw = [&code](Rng& rng) {
        Codeword msg(code.dimension());
        for (auto& v : msg) v = static_cast<uint32_t>(rng.below(code.field()->order()));
        return code.encode(msg);
    };
    return s;
}

inline CodewordSampler sampler_for_code(const ConcatenatedCode& cc) {
    CodewordSampler s;
    s.field = cc.inner().field().get();
    s.draw = [&cc](Rng& rng) {
        Codeword msg(cc.k_outer());
        for (auto& v : msg) v = static_cast<uint32_t>(rng.below(cc.outer().field()->order()));
        return cc.encode(msg);
    };
    return s;
}

namespace detail {

// stream ids for per-trial seed derivation
inline constexpr uint64_t kStreamSchedule = 0x53434845ULL;  // user schedules
inline constexpr uint64_t kStreamMessage = 0x4d455353ULL;   // target message
inline constexpr uint64_t kStreamUser = 0x55534552ULL;      // interferer draws

struct TrialSetup {
    uint64_t trial_seed;
    PermutationSchedule target_schedule;
    std::vector<InterferenceSource> interferers;
};

inline TrialSetup make_trial_setup(const SystemParams& params, InterferenceModel model,
                                   uint64_t campaign_seed, uint64_t trial,
                                   const CodewordSampler* sampler) {
    const uint64_t trial_seed = derive_seed(campaign_seed, trial);
    TrialSetup setup{trial_seed,
                     PermutationSchedule(derive_seed(trial_seed, kStreamSchedule),
                                         static_cast<uint32_t>(params.Q)),
                     {}};
    setup.interferers.reserve(params.S - 1);
    for (uint32_t u = 1; u < params.S; ++u)
        setup.interferers.emplace_back(params, model, derive_seed(trial_seed, kStreamUser + u),
                                       sampler);
    return setup;
}

// target block through the channel plus interference, back at the receiver
inline BitMatrix channel_round_trip(const TrialSetup& setup, const StackedFrameBlock& block) {
    std::vector<TactFrame> frames = transmit_user(block, setup.target_schedule);
    for (uint32_t tau = 0; tau < block.t; ++tau)
        for (const auto& src : setup.interferers) frames[tau].or_with(src.frame(tau));
    return receive(frames, setup.target_schedule);
}

}  // namespace detail

/// Runs `trials` independent decode trials; workers split the index range
/// and the aggregate is order-independent.
inline CampaignResult run_campaign(const SimScenario& sc, bool keep_records = false) {
    sc.params.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const FieldPtr field = field_of_order(sc.params.q);
    const KsLayout layout{sc.params.m, sc.params.t, static_cast<uint32_t>(sc.params.Q)};

    // codes, decoder caches and the interferer sampler are built once and
    // shared read-only across workers
    std::unique_ptr<LinearCode> code;
    std::unique_ptr<ExhaustiveDecoder> exhaustive;
    std::unique_ptr<ConcatenatedCode> concat;
    std::unique_ptr<InnerDecoder> inner;
    CodewordSampler sampler;
    if (sc.decoder == DecoderKind::Exhaustive) {
        const uint64_t n = sc.params.n();
        code = std::make_unique<LinearCode>(
            n <= sc.params.q
                ? LinearCode::reed_solomon(field, static_cast<uint32_t>(n), sc.params.k)
                : LinearCode::random_systematic(field, static_cast<uint32_t>(n), sc.params.k,
                                                derive_seed(sc.seed, 0xC0DEULL)));
        exhaustive = std::make_unique<ExhaustiveDecoder>(*code, layout);
        sampler = sampler_for_code(*code);
    } else {
        concat = std::make_unique<ConcatenatedCode>(
            ConcatenatedCode::make(field, sc.params.t, sc.k_inner, sc.params.m, sc.k_outer));
        inner = std::make_unique<InnerDecoder>(*concat);
        sampler = sampler_for_code(*concat);
    }
    const CodewordSampler* stream_sampler =
        sc.model == InterferenceModel::FullStream ? &sampler : nullptr;

    const uint32_t jobs =
        sc.jobs != 0 ? sc.jobs : std::max(1u, std::thread::hardware_concurrency());
    std::vector<CampaignResult> partial(jobs);

    const auto run_range = [&](uint32_t w, uint64_t first, uint64_t last) {
        CampaignResult& acc = partial[w];
        if (keep_records) acc.records.reserve(last - first);
        for (uint64_t trial = first; trial < last; ++trial) {
            auto setup =
                detail::make_trial_setup(sc.params, sc.model, sc.seed, trial, stream_sampler);
            TrialRecord rec;
            rec.index = trial;
            rec.seed = setup.trial_seed;
            Rng msg_rng(derive_seed(setup.trial_seed, detail::kStreamMessage));
            Codeword sent;
            DecodeOutcome out;
            if (sc.decoder == DecoderKind::Exhaustive) {
                Codeword msg(sc.params.k);
                for (auto& s : msg) s = static_cast<uint32_t>(msg_rng.below(sc.params.q));
                sent = code->encode(msg);
                const StackedFrameBlock block = stack(ks_encode(*field, sent), sc.params.m,
                                                      sc.params.t,
                                                      static_cast<uint32_t>(sc.params.Q));
                const BitMatrix y = detail::channel_round_trip(setup, block);
                if (!cover_check(block, y)) ++acc.cover_violations;
                out = exhaustive->decode(y, keep_records ? CandidatePolicy::Collect
                                                         : CandidatePolicy::CountOnly);
                rec.candidates = out.candidate_count;
            } else {
                Codeword omsg(sc.k_outer);
                for (auto& s : omsg)
                    s = static_cast<uint32_t>(msg_rng.below(concat->outer().field()->order()));
                sent = concat->encode(omsg);
                const StackedFrameBlock block = stack(ks_encode(*field, sent), sc.params.m,
                                                      sc.params.t,
                                                      static_cast<uint32_t>(sc.params.Q));
                const BitMatrix y = detail::channel_round_trip(setup, block);
                if (!cover_check(block, y)) ++acc.cover_violations;
                uint32_t erasures = 0;
                out = concat_decode(y, *concat, *inner, &erasures);
                acc.inner_blocks += sc.params.m;
                acc.inner_erasures += erasures;
                rec.candidates = out.candidate_count;
            }
            rec.failure = !out.decoded();
            if (out.decoded() && out.word != sent) ++acc.wrong_words;
            ++acc.trials;
            acc.failures += rec.failure ? 1 : 0;
            if (keep_records) acc.records.push_back(rec);
        }
    };

    std::vector<std::thread> workers;
    const uint64_t chunk = (sc.trials + jobs - 1) / jobs;
    for (uint32_t w = 0; w < jobs; ++w) {
        const uint64_t first = std::min<uint64_t>(sc.trials, w * chunk);
        const uint64_t last = std::min<uint64_t>(sc.trials, first + chunk);
        if (first >= last) continue;
        workers.emplace_back(run_range, w, first, last);
    }
    for (auto& th : workers) th.join();

    CampaignResult total;
    for (auto& p : partial) {
        total.trials += p.trials;
        total.failures += p.failures;
        total.wrong_words += p.wrong_words;
        total.cover_violations += p.cover_violations;
        total.inner_blocks += p.inner_blocks;
        total.inner_erasures += p.inner_erasures;
        for (auto& r : p.records) total.records.push_back(r);
    }
    total.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return total;
}

struct CoverageResult {
    uint64_t samples = 0;
    uint64_t hits = 0;
    double rate() const {
        return samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
    }
};

/// Empirical per-position interference coverage at the receiver: one probe
/// position per (trial, tact), chosen independently of the realization.
inline CoverageResult measure_coverage(const SystemParams& params, InterferenceModel model,
                                       uint64_t trials, uint64_t seed,
                                       const CodewordSampler* stream_sampler = nullptr) {
    params.validate();
    if (params.S < 2) throw std::invalid_argument("coverage needs at least one interferer");
    CoverageResult out;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        auto setup = detail::make_trial_setup(params, model, seed, trial, stream_sampler);
        for (uint32_t tau = 0; tau < params.t; ++tau) {
            TactFrame f(params.Q);
            for (const auto& src : setup.interferers) f.or_with(src.frame(tau));
            const TactFrame rx = inverse_permute(f, setup.target_schedule.permutation(tau));
            const uint64_t pos = mix64(derive_seed(seed, trial * params.t + tau)) % params.Q;
            ++out.samples;
            out.hits += rx.get(pos) ? 1 : 0;
        }
    }
    return out;
}

}  // namespace dmac
