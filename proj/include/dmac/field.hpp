#pragma once

// Finite field arithmetic for GF(p^e), p prime, order up to 2^24.
//
// Elements are packed integers: a prime-field element is its residue, an
// extension-field element is the radix-(base order) packing of its
// coefficient vector over the immediate base field. Fields are immutable,
// canonicalized (one shared instance per construction), and safe to share
// across threads.
//
// Every field fixes a canonical enumeration alpha_1..alpha_q of its
// elements: alpha_1 = 0 and alpha_{i+1} = g^(i-1) for a fixed primitive
// element g. element_at/index_of translate between packed values and
// 0-based positions in that enumeration.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dmac {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Symbol vector over some field, entries are packed element values.
using Codeword = std::vector<uint32_t>;

/// Marker for an erased symbol position.
inline constexpr uint32_t kErased = 0xffffffffu;

namespace detail {

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

inline std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace detail

class Field : public std::enable_shared_from_this<Field> {
  public:
    static constexpr uint64_t kMaxOrder = 1ull << 24;
    static constexpr uint64_t kTableLimit = 1ull << 16;

    /// GF(p) for prime p.
    static FieldPtr prime(uint32_t p);

    /// GF(p^degree) built directly over the prime field.
    static FieldPtr extension(uint32_t p, uint32_t degree);

    /// One tower step: extension of `base` of the given degree.
    /// degree == 1 returns `base` itself.
    static FieldPtr extension_of(const FieldPtr& base, uint32_t degree);

    uint64_t order() const { return order_; }
    uint32_t characteristic() const { return char_; }
    /// Extension degree over the immediate base (1 for prime fields).
    uint32_t degree() const { return degree_; }
    uint32_t degree_over_prime() const;
    const FieldPtr& base() const { return base_; }
    bool is_prime_field() const { return base_ == nullptr; }
    /// Monic reduction polynomial over the base, ascending coefficients,
    /// size degree()+1. Empty for prime fields.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    uint32_t zero() const { return 0; }
    uint32_t one() const { return 1; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    uint32_t pow(uint32_t a, uint64_t e) const;

    /// The primitive element used for the canonical enumeration.
    uint32_t generator() const { return generator_; }

    /// Canonical enumeration: index 0 -> 0, index i >= 1 -> g^(i-1).
    uint32_t element_at(uint64_t index) const;
    /// Inverse of element_at.
    uint64_t index_of(uint32_t value) const;

    /// Coefficients of `v` over the immediate base field, ascending degree,
    /// length degree(). For a prime field returns {v}.
    std::vector<uint32_t> to_base_coeffs(uint32_t v) const;
    uint32_t from_base_coeffs(const std::vector<uint32_t>& coeffs) const;

    std::string describe() const;

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

  private:
    struct PrivateTag {};

  public:
    // shared_ptr construction only; not part of the public interface
    Field(PrivateTag, uint32_t p);
    Field(PrivateTag, FieldPtr base, uint32_t degree);

  private:
    void check(uint32_t a) const {
        if (a >= order_)
            throw std::invalid_argument("field element " + std::to_string(a) +
                                        " out of range for " + describe());
    }
    uint32_t mul_slow(uint32_t a, uint32_t b) const;
    uint32_t pow_slow(uint32_t a, uint64_t e) const;
    void find_generator();
    void build_tables();
    void build_dlog_steps();

    uint32_t char_ = 0;
    uint32_t degree_ = 1;
    uint64_t order_ = 0;
    FieldPtr base_;                   // null for prime fields
    std::vector<uint32_t> modulus_;   // reduction polynomial over base
    uint32_t generator_ = 1;
    bool has_tables_ = false;
    std::vector<uint32_t> alog_;      // alog_[j] = g^j, j in [0, q-1)
    std::vector<uint32_t> log_;       // inverse of alog_ on nonzero values
    // baby-step/giant-step data for index_of when tables are too large
    uint32_t baby_span_ = 0;
    uint32_t giant_step_ = 0;         // g^(-baby_span_)
    std::unordered_map<uint32_t, uint32_t> baby_;
};

namespace detail {

// Polynomial scratch arithmetic over a base field, used only while
// constructing extension fields (modulus search, generator search).
using Poly = std::vector<uint32_t>;

inline void ptrim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly pmul_mod(const Poly& a, const Poly& b, const Poly& mod, const Field& f) {
    const size_t e = mod.size() - 1;
    Poly c(a.size() + b.size() > 0 ? a.size() + b.size() - 1 : 0, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    }
    for (size_t i = c.size(); i-- > e;) {
        if (c[i] == 0) continue;
        const uint32_t lead = c[i];
        c[i] = 0;
        for (size_t j = 0; j < e; ++j)
            c[i - e + j] = f.sub(c[i - e + j], f.mul(lead, mod[j]));
    }
    c.resize(e);
    return c;
}

// x^n mod `mod`
inline Poly ppow_x_mod(uint64_t n, const Poly& mod, const Field& f) {
    Poly result{1};
    result.resize(mod.size() - 1, 0);
    Poly x{0, 1};
    x.resize(mod.size() - 1, 0);
    Poly sq = x;
    while (n > 0) {
        if (n & 1) result = pmul_mod(result, sq, mod, f);
        sq = pmul_mod(sq, sq, mod, f);
        n >>= 1;
    }
    return result;
}

inline Poly pgcd(Poly a, Poly b, const Field& f) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        // a mod b with b made monic
        const uint32_t ilead = f.inv(b.back());
        while (a.size() >= b.size()) {
            const uint32_t coef = f.mul(a.back(), ilead);
            const size_t shift = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j)
                a[shift + j] = f.sub(a[shift + j], f.mul(coef, b[j]));
            ptrim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin's irreducibility test for a monic degree-e polynomial over `f`.
inline bool is_irreducible(const Poly& mod, const Field& f) {
    const size_t e = mod.size() - 1;
    const uint64_t b = f.order();
    uint64_t be = 1;
    for (size_t i = 0; i < e; ++i) be *= b;
    Poly xq = ppow_x_mod(be, mod, f);
    // must have x^(b^e) == x
    Poly x{0, 1};
    x.resize(e, 0);
    if (xq != x) return false;
    for (uint64_t r : prime_factors(e)) {
        uint64_t bq = 1;
        for (size_t i = 0; i < e / r; ++i) bq *= b;
        Poly h = ppow_x_mod(bq, mod, f);
        // gcd(h - x, mod) must be constant
        Poly diff(e, 0);
        for (size_t i = 0; i < e; ++i) diff[i] = f.sub(h[i], i == 1 ? 1u : 0u);
        Poly g = pgcd(diff, mod, f);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Field implementation

inline Field::Field(PrivateTag, uint32_t p) {
    if (!detail::is_prime_u32(p))
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    char_ = p;
    degree_ = 1;
    order_ = p;
    if (order_ > kMaxOrder)
        throw std::invalid_argument("field order exceeds supported limit 2^24");
    find_generator();
    if (order_ <= kTableLimit)
        build_tables();
    else
        build_dlog_steps();
}

inline Field::Field(PrivateTag, FieldPtr base, uint32_t degree) {
    base_ = std::move(base);
    char_ = base_->characteristic();
    degree_ = degree;
    order_ = 1;
    for (uint32_t i = 0; i < degree; ++i) {
        order_ *= base_->order();
        if (order_ > kMaxOrder)
            throw std::invalid_argument("field order exceeds supported limit 2^24");
    }
    // deterministic modulus: first monic irreducible in ascending packed order
    const uint64_t b = base_->order();
    uint64_t combos = 1;
    for (uint32_t i = 0; i < degree; ++i) combos *= b;
    bool found = false;
    for (uint64_t c = 1; c < combos && !found; ++c) {
        if (c % b == 0) continue;  // constant term must be nonzero
        detail::Poly f(degree + 1, 0);
        uint64_t v = c;
        for (uint32_t i = 0; i < degree; ++i) {
            f[i] = static_cast<uint32_t>(v % b);
            v /= b;
        }
        f[degree] = 1;
        if (detail::is_irreducible(f, *base_)) {
            modulus_ = f;
            found = true;
        }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");  // cannot happen
    find_generator();
    if (order_ <= kTableLimit)
        build_tables();
    else
        build_dlog_steps();
}

inline uint32_t Field::degree_over_prime() const {
    uint32_t d = degree_;
    for (const Field* f = base_.get(); f != nullptr; f = f->base_.get()) d *= f->degree_;
    return d;
}

inline uint32_t Field::add(uint32_t a, uint32_t b) const {
    check(a);
    check(b);
    if (char_ == 2) return a ^ b;
    if (is_prime_field()) return (a + b) % char_;
    // characteristic-p digitwise addition; nested packings align on base-p digits
    uint64_t r = 0, pw = 1;
    while (a != 0 || b != 0) {
        const uint32_t da = a % char_, db = b % char_;
        r += static_cast<uint64_t>((da + db) % char_) * pw;
        a /= char_;
        b /= char_;
        pw *= char_;
    }
    return static_cast<uint32_t>(r);
}

inline uint32_t Field::neg(uint32_t a) const {
    check(a);
    if (char_ == 2) return a;
    if (is_prime_field()) return a == 0 ? 0 : char_ - a;
    uint64_t r = 0, pw = 1;
    while (a != 0) {
        const uint32_t da = a % char_;
        r += static_cast<uint64_t>(da == 0 ? 0 : char_ - da) * pw;
        a /= char_;
        pw *= char_;
    }
    return static_cast<uint32_t>(r);
}

inline uint32_t Field::mul_slow(uint32_t a, uint32_t b) const {
    if (is_prime_field()) return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % char_);
    if (a == 0 || b == 0) return 0;
    const auto pa = to_base_coeffs(a);
    const auto pb = to_base_coeffs(b);
    detail::Poly c = detail::pmul_mod(pa, pb, modulus_, *base_);
    return from_base_coeffs(c);
}

inline uint32_t Field::mul(uint32_t a, uint32_t b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) return 0;
    if (has_tables_ && !is_prime_field()) {
        uint64_t e = static_cast<uint64_t>(log_[a]) + log_[b];
        if (e >= order_ - 1) e -= order_ - 1;
        return alog_[e];
    }
    return mul_slow(a, b);
}

inline uint32_t Field::inv(uint32_t a) const {
    check(a);
    if (a == 0) throw std::domain_error("inverse of zero");
    if (has_tables_) {
        const uint64_t e = (order_ - 1 - log_[a]) % (order_ - 1);
        return alog_[e];
    }
    return pow(a, order_ - 2);
}

inline uint32_t Field::pow(uint32_t a, uint64_t e) const {
    check(a);
    if (e == 0) return 1;
    if (a == 0) return 0;
    if (has_tables_ && !is_prime_field()) {
        const uint64_t le = (static_cast<uint64_t>(log_[a]) % (order_ - 1)) * (e % (order_ - 1)) % (order_ - 1);
        return alog_[le];
    }
    uint32_t result = 1, sq = a;
    while (e > 0) {
        if (e & 1) result = mul_slow(result, sq);
        sq = mul_slow(sq, sq);
        e >>= 1;
    }
    return result;
}

inline uint32_t Field::pow_slow(uint32_t a, uint64_t e) const {
    uint32_t result = 1, sq = a;
    while (e > 0) {
        if (e & 1) result = mul_slow(result, sq);
        sq = mul_slow(sq, sq);
        e >>= 1;
    }
    return result;
}

inline void Field::find_generator() {
    if (order_ == 2) {
        generator_ = 1;
        return;
    }
    const auto factors = detail::prime_factors(order_ - 1);
    for (uint32_t cand = 2; cand < order_; ++cand) {
        bool primitive = true;
        for (uint64_t f : factors) {
            if (pow_slow(cand, (order_ - 1) / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            generator_ = cand;
            return;
        }
    }
    throw std::logic_error("no primitive element found");  // cannot happen
}

inline void Field::build_tables() {
    alog_.resize(order_ - 1);
    log_.assign(order_, 0);
    uint32_t cur = 1;
    for (uint64_t j = 0; j + 1 < order_; ++j) {
        alog_[j] = cur;
        log_[cur] = static_cast<uint32_t>(j);
        cur = mul_slow(cur, generator_);
    }
    if (cur != 1) throw std::logic_error("generator order mismatch");
    has_tables_ = true;
}

inline void Field::build_dlog_steps() {
    // baby-step/giant-step support for index_of on large fields
    uint64_t r = 1;
    while (r * r < order_ - 1) ++r;
    baby_span_ = static_cast<uint32_t>(r);
    baby_.reserve(static_cast<size_t>(r * 2));
    uint32_t cur = 1;
    for (uint64_t j = 0; j < r; ++j) {
        baby_.emplace(cur, static_cast<uint32_t>(j));
        cur = mul_slow(cur, generator_);
    }
    giant_step_ = pow_slow(pow_slow(generator_, baby_span_), order_ - 2);
}

inline uint32_t Field::element_at(uint64_t index) const {
    if (index >= order_)
        throw std::invalid_argument("canonical index out of range");
    if (index == 0) return 0;
    if (has_tables_) return alog_[index - 1];
    return pow_slow(generator_, index - 1);
}

inline uint64_t Field::index_of(uint32_t value) const {
    check(value);
    if (value == 0) return 0;
    if (has_tables_) return static_cast<uint64_t>(log_[value]) + 1;
    uint32_t cur = value;
    const uint64_t steps = (order_ - 2) / baby_span_ + 1;
    for (uint64_t i = 0; i <= steps; ++i) {
        auto it = baby_.find(cur);
        if (it != baby_.end()) return i * baby_span_ + it->second + 1;
        cur = mul_slow(cur, giant_step_);
    }
    throw std::logic_error("discrete log not found");  // cannot happen
}

inline std::vector<uint32_t> Field::to_base_coeffs(uint32_t v) const {
    check(v);
    if (is_prime_field()) return {v};
    std::vector<uint32_t> c(degree_, 0);
    const uint64_t b = base_->order();
    for (uint32_t i = 0; i < degree_; ++i) {
        c[i] = static_cast<uint32_t>(v % b);
        v = static_cast<uint32_t>(v / b);
    }
    return c;
}

inline uint32_t Field::from_base_coeffs(const std::vector<uint32_t>& coeffs) const {
    if (is_prime_field()) {
        if (coeffs.size() != 1) throw std::invalid_argument("coefficient count mismatch");
        check(coeffs[0]);
        return coeffs[0];
    }
    if (coeffs.size() > degree_) throw std::invalid_argument("coefficient count mismatch");
    const uint64_t b = base_->order();
    uint64_t v = 0, pw = 1;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] >= b) throw std::invalid_argument("coefficient out of base-field range");
        v += coeffs[i] * pw;
        pw *= b;
    }
    return static_cast<uint32_t>(v);
}

inline std::string Field::describe() const {
    if (is_prime_field()) return "GF(" + std::to_string(char_) + ")";
    return "GF(" + std::to_string(base_->order()) + "^" + std::to_string(degree_) + ")";
}

namespace detail {

inline std::mutex& field_registry_mutex() {
    static std::mutex m;
    return m;
}

inline std::map<std::string, std::weak_ptr<const Field>>& field_registry() {
    static std::map<std::string, std::weak_ptr<const Field>> r;
    return r;
}

template <class Make>
FieldPtr field_cached(const std::string& key, Make&& make) {
    std::lock_guard<std::mutex> lock(field_registry_mutex());
    auto& reg = field_registry();
    if (auto it = reg.find(key); it != reg.end()) {
        if (auto p = it->second.lock()) return p;
    }
    FieldPtr f = make();
    reg[key] = f;
    return f;
}

inline std::string field_key(const Field& f) {
    if (f.is_prime_field()) return "p" + std::to_string(f.characteristic());
    return field_key(*f.base()) + "^" + std::to_string(f.degree());
}

}  // namespace detail

inline FieldPtr Field::prime(uint32_t p) {
    return detail::field_cached("p" + std::to_string(p),
                                [&] { return std::make_shared<const Field>(PrivateTag{}, p); });
}

inline FieldPtr Field::extension(uint32_t p, uint32_t degree) {
    if (degree == 0) throw std::invalid_argument("extension degree must be positive");
    if (degree == 1) return prime(p);
    FieldPtr b = prime(p);
    return extension_of(b, degree);
}

inline FieldPtr Field::extension_of(const FieldPtr& base, uint32_t degree) {
    if (base == nullptr) throw std::invalid_argument("null base field");
    if (degree == 0) throw std::invalid_argument("extension degree must be positive");
    if (degree == 1) return base;
    const std::string key = detail::field_key(*base) + "^" + std::to_string(degree);
    return detail::field_cached(
        key, [&] { return std::make_shared<const Field>(PrivateTag{}, base, degree); });
}

/// GF(q) for a prime power q, built over the prime field.
inline FieldPtr field_of_order(uint64_t q) {
    if (q < 2 || q > Field::kMaxOrder)
        throw std::invalid_argument("field order must lie in [2, 2^24]");
    uint64_t p = q;
    for (uint64_t f = 2; f * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    uint32_t e = 0;
    uint64_t v = q;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    if (v != 1)
        throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return Field::extension(static_cast<uint32_t>(p), e);
}

// ---------------------------------------------------------------------------

/// A field element paired with its field; arithmetic checks field identity.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldPtr field, uint32_t value) : field_(std::move(field)), value_(value) {
        if (field_ == nullptr) throw std::invalid_argument("null field");
        if (value_ >= field_->order()) throw std::invalid_argument("element value out of range");
    }

    const FieldPtr& field() const { return field_; }
    uint32_t value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const {
        return with(field_->add(value_, same(o).value_));
    }
    FieldElement operator-(const FieldElement& o) const {
        return with(field_->sub(value_, same(o).value_));
    }
    FieldElement operator*(const FieldElement& o) const {
        return with(field_->mul(value_, same(o).value_));
    }
    FieldElement operator/(const FieldElement& o) const {
        return with(field_->div(value_, same(o).value_));
    }
    FieldElement inverse() const { return with(field_->inv(value_)); }
    FieldElement pow(uint64_t e) const { return with(field_->pow(value_, e)); }

    bool operator==(const FieldElement& o) const {
        return field_ == o.field_ && value_ == o.value_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

  private:
    FieldElement with(uint32_t v) const { return FieldElement(field_, v); }
    const FieldElement& same(const FieldElement& o) const {
        if (field_ != o.field_)
            throw std::invalid_argument("elements belong to different fields");
        return o;
    }

    FieldPtr field_;
    uint32_t value_ = 0;
};

}  // namespace dmac
