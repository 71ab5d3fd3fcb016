#pragma once

// Closed-form analysis of the system: the interference coverage probability
// beta, the failure-probability bounds, the parameter sizing chain
// (required distance, blocklength, tacts), maximal user counts, rates and
// their asymptotics, and the Chernoff machinery of the reduced-complexity
// scheme. Everything here is a pure function; heavy magnitudes such as
// q^k beta^d are evaluated in the log domain.

#include "dmac/codes.hpp"
#include "dmac/numeric.hpp"
#include "dmac/params.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace dmac {

// ---------------------------------------------------------------------------
// 1-D optimization: coarse scan to bracket, then golden section.

template <class F>
double golden_section_min(F&& f, double a, double b, double tol = 1e-12, int iters = 300) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (iters-- > 0 && (b - a) > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Minimizer of f over [lo, hi]: log-spaced coarse scan establishes a
/// bracket, golden section refines it to `tol` in the argument.
template <class F>
double scan_golden_min(F&& f, double lo, double hi, int npts = 512, double tol = 1e-12) {
    if (!(lo > 0 && hi > lo)) throw std::invalid_argument("scan_golden_min: bad interval");
    const double llo = std::log(lo), lhi = std::log(hi);
    double best_x = lo, best_v = f(lo);
    std::vector<double> xs(npts);
    for (int i = 0; i < npts; ++i) {
        xs[i] = std::exp(llo + (lhi - llo) * i / (npts - 1));
        const double v = f(xs[i]);
        if (v < best_v) {
            best_v = v;
            best_x = xs[i];
        }
    }
    double a = lo, b = hi;
    for (int i = 0; i < npts; ++i) {
        if (xs[i] == best_x) {
            a = i > 0 ? xs[i - 1] : lo;
            b = i + 1 < npts ? xs[i + 1] : hi;
            break;
        }
    }
    return golden_section_min(f, a, b, tol);
}

// ---------------------------------------------------------------------------
// Coverage probability and the failure-probability bounds.

/// Probability that a fixed position is covered by at least one of the S-1
/// interferers: 1 - (1 - m/Q)^(S-1).
inline double beta(uint64_t Q, uint64_t m, uint64_t S) {
    if (m < 1 || m > Q) throw std::invalid_argument("beta: require 1 <= m <= Q");
    if (S < 1) throw std::invalid_argument("beta: require S >= 1");
    if (S == 1) return 0.0;
    if (m == Q) return 1.0;
    return -std::expm1(static_cast<double>(S - 1) *
                       std::log1p(-static_cast<double>(m) / static_cast<double>(Q)));
}

/// log2 of the loose bound q^k beta^d.
inline double theorem1_loose_log2(uint64_t q, uint32_t k, uint64_t d, double b) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
    if (b == 0.0)
        return d >= 1 ? -std::numeric_limits<double>::infinity()
                      : k * std::log2(static_cast<double>(q));
    return k * std::log2(static_cast<double>(q)) + static_cast<double>(d) * std::log2(b);
}

inline double theorem1_loose(uint64_t q, uint32_t k, uint64_t d, double b) {
    return std::exp2(theorem1_loose_log2(q, k, d, b));
}

/// The exact form sum_{W>=d} A(W) beta^W, never exceeding the loose form.
inline double theorem1_exact_sum(const WeightDistribution& wd, double b) {
    if (!(b >= 0.0 && b <= 1.0)) throw std::invalid_argument("beta must lie in [0, 1]");
    if (b == 0.0) return 0.0;
    const double lb = std::log2(b);
    double sum = 0.0;
    for (size_t w = 1; w < wd.counts.size(); ++w) {
        if (wd.counts[w] == 0) continue;
        sum += std::exp2(log2_big(wd.counts[w]) + static_cast<double>(w) * lb);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Parameter sizing: distance, blocklength, tacts.

/// Smallest d with q^k beta^d <= p_r, i.e.
/// ceil[(k log2 q - log2 p_r) / (-log2 beta)]. By convention d = 1 when
/// beta = 0 (the bound is already zero).
inline uint64_t required_d(uint32_t k, uint64_t q, double p_r, double b) {
    if (!(p_r > 0.0 && p_r < 1.0)) throw std::invalid_argument("p_r must lie in (0, 1)");
    if (b == 0.0) return 1;
    if (!(b > 0.0 && b < 1.0))
        throw std::domain_error("required_d: bound vacuous for beta >= 1");
    const double lq = std::log2(static_cast<double>(q));
    const double lb = std::log2(b);
    const double lpr = std::log2(p_r);
    const auto ok = [&](uint64_t d) { return k * lq + static_cast<double>(d) * lb <= lpr; };
    const double r = (k * lq - lpr) / (-lb);
    uint64_t d = r < 1.0 ? 1 : static_cast<uint64_t>(std::ceil(r - 1e-9));
    while (!ok(d)) ++d;
    while (d > 1 && ok(d - 1)) --d;
    return d;
}

/// The closed-form blocklength ceil[(log2 q / (log2 q - 1)) (k + d - 1)].
/// Exact integer arithmetic when q is a power of two; undefined for q = 2.
inline uint64_t closed_form_n(uint32_t k, uint64_t d, uint64_t q) {
    if (q <= 2) throw std::domain_error("closed_form_n requires q >= 3");
    if ((q & (q - 1)) == 0) {
        uint64_t j = 0;
        for (uint64_t v = q; v > 1; v >>= 1) ++j;
        const uint64_t a = j * (k + d - 1);
        return (a + j - 2) / (j - 1);
    }
    const double lq = std::log2(static_cast<double>(q));
    const double v = lq / (lq - 1.0) * static_cast<double>(k + d - 1);
    const double r = std::nearbyint(v);
    if (std::fabs(v - r) < 1e-9 * std::max(1.0, std::fabs(v))) return static_cast<uint64_t>(r);
    return static_cast<uint64_t>(std::ceil(v));
}

/// Pre-ceiling value of the single-ceiling tact estimate
/// (log2 q / (log2 q - 1)) (k (log2 q - log2 beta) - log2 p_r) / (m (-log2 beta)).
inline double min_tacts_real(const SystemParams& p) {
    if (p.q <= 2) throw std::domain_error("tact estimate requires q >= 3");
    const double lq = std::log2(static_cast<double>(p.q));
    const double a = lq / (lq - 1.0);
    const double b = beta(p.Q, p.m, p.S);
    if (b == 0.0) return a * static_cast<double>(p.k) / p.m;  // S = 1 limit
    const double L = -std::log2(b);
    return a * (p.k * (lq + L) - std::log2(p.p_r)) / (p.m * L);
}

/// The single-ceiling form printed in the analysis.
inline uint64_t min_tacts(const SystemParams& p) {
    const double v = min_tacts_real(p);
    const double r = std::nearbyint(v);
    if (std::fabs(v - r) < 1e-9 * std::max(1.0, std::fabs(v)))
        return static_cast<uint64_t>(r);
    return static_cast<uint64_t>(std::ceil(v));
}

/// Stepwise alternative: choose d, then n by the closed form, then
/// t = ceil(n/m). Differs from min_tacts by small integers because the
/// ceilings nest differently; both are exposed on purpose.
inline uint64_t min_tacts_stepwise(const SystemParams& p) {
    const double b = beta(p.Q, p.m, p.S);
    const uint64_t d = required_d(p.k, p.q, p.p_r, b);
    const uint64_t n = closed_form_n(p.k, d, p.q);
    return (n + p.m - 1) / p.m;
}

// ---------------------------------------------------------------------------
// Maximal number of users.

struct SMaxBound {
    int64_t exact = 0;       // floor of the logarithm form, plus 1
    int64_t simplified = 0;  // floor of the (Q/m - 1) x form, plus 1; never larger
};

/// Lower bound on the number of users keeping the failure bound below p_r:
/// floor[ -ln(1 - p_r^(1/d) / q^(R/delta)) / -ln(1 - m/Q) ] + 1,
/// plus the simplified form floor[(Q/m - 1) p_r^(1/d) / q^(R/delta)] + 1.
inline SMaxBound s_max_exhaustive(uint64_t q, double rate, double delta, uint64_t d, double p_r,
                                  uint64_t m, uint64_t Q) {
    if (!(p_r > 0.0 && p_r < 1.0)) throw std::invalid_argument("p_r must lie in (0, 1)");
    if (!(delta > 0.0) || d < 1) throw std::invalid_argument("require delta > 0 and d >= 1");
    if (m < 1 || m > Q) throw std::invalid_argument("require 1 <= m <= Q");
    const double lx = std::log(p_r) / static_cast<double>(d) -
                      rate / delta * std::log(static_cast<double>(q));
    if (!(lx < 0.0))
        throw std::domain_error("s_max: p_r^(1/d) must be below q^(R/delta)");
    const double x = std::exp(lx);
    SMaxBound out;
    if (m == Q) {  // -ln(1 - m/Q) diverges; a single user always fits
        out.exact = 1;
        out.simplified = 1;
        return out;
    }
    const double num = -std::log1p(-x);
    const double den = -std::log1p(-static_cast<double>(m) / static_cast<double>(Q));
    out.exact = static_cast<int64_t>(std::floor(num / den)) + 1;
    out.simplified =
        static_cast<int64_t>(std::floor((static_cast<double>(Q) / m - 1.0) * x)) + 1;
    return out;
}

/// Eq.-(2) form with the inner code's parameters and the admissible inner
/// failure probability of the concatenated scheme.
inline SMaxBound s_max_concatenated(uint64_t q, double rate_inner, double delta_inner,
                                    uint64_t d_inner, double p_inner_hat, uint64_t m,
                                    uint64_t Q) {
    return s_max_exhaustive(q, rate_inner, delta_inner, d_inner, p_inner_hat, m, Q);
}

// ---------------------------------------------------------------------------
// Rates.

struct Rates {
    double per_user = 0;  // (k/t) log2 q, bits per tact
    double sum = 0;       // S times per_user
    double relative = 0;  // sum / Q
};

inline Rates rates(const SystemParams& p, uint64_t t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    Rates r;
    r.per_user = static_cast<double>(p.k) / static_cast<double>(t) *
                 std::log2(static_cast<double>(p.q));
    r.sum = static_cast<double>(p.S) * r.per_user;
    r.relative = r.sum / static_cast<double>(p.Q);
    return r;
}

struct RhoPoint {
    uint32_t m = 0;
    uint64_t t = 0;
    double rho = 0;
};

/// rho(m) over the full admissible range m in [1, Q/q], t from min_tacts.
inline std::vector<RhoPoint> rho_scan(const SystemParams& base) {
    std::vector<RhoPoint> out;
    const uint64_t m_max = base.Q / base.q;
    for (uint64_t m = 1; m <= m_max; ++m) {
        SystemParams p = base;
        p.m = static_cast<uint32_t>(m);
        RhoPoint pt;
        pt.m = p.m;
        pt.t = min_tacts(p);
        pt.rho = rates(p, pt.t).relative;
        out.push_back(pt);
    }
    return out;
}

struct RhoStar {
    double value = 0;
    uint32_t m = 0;
    uint64_t t = 0;
};

/// max_{1 <= m <= Q/q} rho(m); ties resolve toward smaller m.
inline RhoStar rho_star(const SystemParams& base) {
    RhoStar best;
    for (const RhoPoint& pt : rho_scan(base)) {
        if (pt.rho > best.value) {
            best.value = pt.rho;
            best.m = pt.m;
            best.t = pt.t;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Asymptotics: p_r = 2^(-c n).

inline double c_prime(uint64_t q, double c) {
    if (q < 3) throw std::domain_error("asymptotics require q >= 3");
    return c * std::log2(static_cast<double>(q)) / std::log2(static_cast<double>(q - 1));
}

/// Asymptotic tacts per codeword:
/// (log2 q/(log2 q - 1)) (k/m) (log2 q - log2 beta)/(-log2 beta - c').
inline double t_asymptotic(uint64_t q, double k, double m, double b, double c) {
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
    const double cp = c_prime(q, c);
    const double lq = std::log2(static_cast<double>(q));
    const double L = -std::log2(b);
    if (!(L > cp)) throw std::domain_error("decay rate unattainable: -log2 beta <= c'");
    return lq / (lq - 1.0) * (k / m) * (lq + L) / (L - cp);
}

/// Lower bound on the asymptotic relative sum rate at density mu = m/Q:
/// S mu (-log2 beta - c') (log2 q - 1)/(log2 q - log2 beta).
/// Nonpositive values mean the requested decay rate is infeasible at mu.
inline double rho_inf_lower(uint64_t q, uint64_t S, double mu, double c) {
    if (q < 3) throw std::domain_error("asymptotics require q >= 3");
    if (!(mu > 0.0 && mu <= 1.0 / static_cast<double>(q)))
        throw std::invalid_argument("require 0 < mu <= 1/q");
    const double lq = std::log2(static_cast<double>(q));
    if (S == 1) return static_cast<double>(S) * mu * (lq - 1.0);  // beta -> 0 limit
    const double b = -std::expm1(static_cast<double>(S - 1) * std::log1p(-mu));
    if (b >= 1.0) return -std::numeric_limits<double>::infinity();
    const double L = -std::log2(b);
    const double cp = c_prime(q, c);
    return static_cast<double>(S) * mu * (L - cp) * (lq - 1.0) / (lq + L);
}

/// The analysis' candidate density 1 - (1/2)^(1/(S-1)); beta(mu_hat) = 1/2.
inline double mu_hat(uint64_t S) {
    if (S < 2) throw std::invalid_argument("mu_hat requires S >= 2");
    return -std::expm1(-std::log(2.0) / static_cast<double>(S - 1));
}

struct RhoStarInf {
    double value = 0;          // numerically maximized over mu in (0, 1/q]
    double mu = 0;             // its argmax
    double mu_hat = 0;         // the candidate density
    double mu_hat_rule = 0;    // value at mu_hat when mu_hat < 1/q, else at 1/q
};

/// max_{0 < mu <= 1/q} rho_inf_lower, plus the piecewise mu_hat rule the
/// analysis uses as a lower bound for it.
inline RhoStarInf rho_star_inf(uint64_t q, uint64_t S, double c) {
    if (S < 2) throw std::invalid_argument("rho_star_inf requires S >= 2");
    RhoStarInf out;
    const double hi = 1.0 / static_cast<double>(q);
    const double mh = mu_hat(S);
    const double lo = std::min(hi, mh) * 1e-6;
    const auto negf = [&](double mu) { return -rho_inf_lower(q, S, std::min(mu, hi), c); };
    const double mu_best = std::min(hi, scan_golden_min(negf, lo, hi, 512, 1e-15));
    out.mu = mu_best;
    out.value = rho_inf_lower(q, S, mu_best, c);
    const double at_hi = rho_inf_lower(q, S, hi, c);
    if (at_hi > out.value) {  // boundary can beat the interior bracket
        out.value = at_hi;
        out.mu = hi;
    }
    out.mu_hat = mh;
    out.mu_hat_rule = mh < hi ? rho_inf_lower(q, S, mh, c) : at_hi;
    return out;
}

/// Floor of the mu_hat rule for small epsilon:
/// (1 - S eps) ((log2 q - 1)/(log2 q + 1)) ln 2.
inline double rho_floor(uint64_t q, uint64_t S, double eps) {
    if (q < 3) throw std::domain_error("asymptotics require q >= 3");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const double eps_total = static_cast<double>(S) * eps;
    if (!(eps_total < 1.0)) throw std::invalid_argument("S*eps must be below 1");
    const double lq = std::log2(static_cast<double>(q));
    return (1.0 - eps_total) * (lq - 1.0) / (lq + 1.0) * std::log(2.0);
}

// ---------------------------------------------------------------------------
// Chernoff machinery of the concatenated scheme.

/// min_{s>0} e^(-s dO) [1 + p (e^s - 1)]^m, the bound on outer failure when
/// inner blocks erase independently with probability p.
inline double chernoff_p_star(uint32_t d_outer, uint32_t m, double p_inner) {
    if (!(p_inner > 0.0 && p_inner < 1.0))
        throw std::invalid_argument("p_inner must lie in (0, 1)");
    if (d_outer > m) throw std::invalid_argument("require d_outer <= m");
    if (d_outer == 0) return 1.0;  // infimum at s -> 0+
    if (d_outer == m) return std::pow(p_inner, static_cast<double>(m));  // s -> inf limit
    if (static_cast<double>(d_outer) <= p_inner * m) return 1.0;  // bound is vacuous
    const auto g = [&](double s) {
        const double le = std::log(p_inner) + s;
        const double u = le > 35.0 ? le : std::log1p(p_inner * std::expm1(s));
        return -s * d_outer + m * u;
    };
    const double s_star = std::log(d_outer * (1.0 - p_inner)) -
                          std::log(p_inner * static_cast<double>(m - d_outer));
    const double s_hi = std::max(10.0, 3.0 * std::fabs(s_star));
    const double s_min = scan_golden_min(g, 1e-12, s_hi);
    return std::min(1.0, std::exp(g(s_min)));
}

/// Largest admissible inner failure probability:
/// max_{s>0} (p_r^(1/m) e^(s deltaO) - 1)/(e^s - 1).
inline double p_inner_max(double p_r, uint32_t m, double delta_outer) {
    if (!(p_r > 0.0 && p_r < 1.0)) throw std::invalid_argument("p_r must lie in (0, 1)");
    if (!(delta_outer > 0.0 && delta_outer <= 1.0))
        throw std::invalid_argument("require 0 < delta_outer <= 1");
    const double la = std::log(p_r) / static_cast<double>(m);
    if (delta_outer == 1.0) return std::exp(la);  // supremum as s -> inf
    const double s0 = -la / delta_outer;  // numerator turns positive here
    const double u_hi = std::max(200.0, 20.0 * s0);
    const auto negg = [&](double u) {
        const double s = s0 + u;
        return -std::exp(log_expm1(la + s * delta_outer) - log_expm1(s));
    };
    const double u_best = scan_golden_min(negg, 1e-12, u_hi);
    const double best = -negg(u_best);
    if (!(best > 0.0))
        throw std::domain_error("p_inner_max: no positive admissible inner failure probability");
    return best;
}

// ---------------------------------------------------------------------------
// Gilbert-Varshamov distance sizing in the log domain, for parameter sweeps
// where exact big-integer search would be wasteful.

/// Largest d (capped by the Singleton bound) whose GV condition
/// sum_{i=0}^{d-2} C(n-1,i)(q-1)^i <= q^(n-k) holds.
inline uint64_t gv_max_d(uint64_t n, uint64_t k, double q) {
    if (k >= n) return 1;
    const double rhs = static_cast<double>(n - k) * std::log(q);
    const uint64_t d_cap = n - k + 1;
    double run = -std::numeric_limits<double>::infinity();
    uint64_t d = 1;
    for (uint64_t i = 0; i + 2 <= d_cap; ++i) {
        run = log_add_exp(run, log_binomial(static_cast<double>(n - 1), static_cast<double>(i)) +
                                   static_cast<double>(i) * std::log(q - 1.0));
        if (run <= rhs)
            d = i + 2;
        else
            break;
    }
    return d;
}

}  // namespace dmac
