#include "dmac/field.hpp"

#include "dmac/rng.hpp"

#include <gtest/gtest.h>

using namespace dmac;

namespace {

// Exhaustive or sampled verification of the field axioms.
void check_axioms(const FieldPtr& f, bool exhaustive) {
    const uint64_t q = f->order();
    ASSERT_GE(q, 2u);
    EXPECT_EQ(f->add(0, 0), 0u);
    EXPECT_EQ(f->mul(1, 1), 1u);
    if (exhaustive) {
        for (uint32_t a = 0; a < q; ++a) {
            EXPECT_EQ(f->add(a, 0), a);
            EXPECT_EQ(f->mul(a, 1), a);
            EXPECT_EQ(f->add(a, f->neg(a)), 0u);
            if (a != 0) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
            for (uint32_t b = 0; b < q; ++b) {
                EXPECT_EQ(f->add(a, b), f->add(b, a));
                EXPECT_EQ(f->mul(a, b), f->mul(b, a));
            }
        }
    }
    Rng rng(7);
    const int triples = exhaustive ? 500 : 2000;
    for (int i = 0; i < triples; ++i) {
        const auto a = static_cast<uint32_t>(rng.below(q));
        const auto b = static_cast<uint32_t>(rng.below(q));
        const auto c = static_cast<uint32_t>(rng.below(q));
        EXPECT_EQ(f->add(a, f->add(b, c)), f->add(f->add(a, b), c));
        EXPECT_EQ(f->mul(a, f->mul(b, c)), f->mul(f->mul(a, b), c));
        EXPECT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
        EXPECT_EQ(f->add(a, b), f->add(b, a));
        EXPECT_EQ(f->mul(a, b), f->mul(b, a));
        if (a != 0) EXPECT_EQ(f->mul(a, f->inv(a)), 1u);
    }
}

}  // namespace

TEST(Field, PrimeFieldBasics) {
    auto f7 = Field::prime(7);
    EXPECT_EQ(f7->order(), 7u);
    EXPECT_EQ(f7->characteristic(), 7u);
    EXPECT_TRUE(f7->is_prime_field());
    EXPECT_EQ(f7->add(3, 5), 1u);  // 8 mod 7
    EXPECT_EQ(f7->mul(3, 5), 1u);
    EXPECT_EQ(f7->sub(2, 5), 4u);
    for (uint32_t a = 1; a < 7; ++a) EXPECT_EQ(f7->mul(a, f7->inv(a)), 1u);
}

TEST(Field, NonPrimeCharacteristicRejected) {
    EXPECT_THROW(Field::prime(4), std::invalid_argument);
    EXPECT_THROW(Field::prime(1), std::invalid_argument);
    EXPECT_THROW(Field::extension(6, 2), std::invalid_argument);
}

TEST(Field, OrderLimitEnforced) {
    EXPECT_THROW(Field::extension(2, 25), std::invalid_argument);
    EXPECT_NO_THROW(Field::extension(2, 24));
}

TEST(Field, CanonicalEnumeration) {
    auto f7 = Field::prime(7);
    // index 0 is the zero element, index 1 the unit, then ascending powers
    EXPECT_EQ(f7->element_at(0), 0u);
    EXPECT_EQ(f7->element_at(1), 1u);
    const uint32_t g = f7->generator();
    uint32_t cur = 1;
    for (uint64_t i = 1; i < 7; ++i) {
        EXPECT_EQ(f7->element_at(i), cur);
        EXPECT_EQ(f7->index_of(cur), i);
        cur = f7->mul(cur, g);
    }
    EXPECT_EQ(cur, 1u);  // generator order is q-1
    EXPECT_EQ(f7->index_of(0), 0u);
    EXPECT_THROW(f7->element_at(7), std::invalid_argument);
}

TEST(Field, EnumerationRoundTripAllFields) {
    for (const auto& f : {Field::prime(2), Field::prime(13), Field::extension(2, 6),
                          Field::extension(3, 2), Field::extension(2, 12)}) {
        for (uint64_t i = 0; i < f->order(); ++i)
            EXPECT_EQ(f->index_of(f->element_at(i)), i) << f->describe();
    }
}

TEST(Field, AxiomsExhaustiveSmallFields) {
    check_axioms(Field::prime(2), true);
    check_axioms(Field::prime(7), true);
    check_axioms(Field::extension(2, 3), true);
    check_axioms(Field::extension(3, 2), true);
    check_axioms(Field::extension(2, 6), true);
    check_axioms(Field::extension(7, 2), true);   // GF(49)
    check_axioms(Field::extension(2, 10), true);  // the 2^10 exhaustive ceiling
}

TEST(Field, MulCommutesExhaustivelyGf64) {
    auto f = Field::extension(2, 6);
    for (uint32_t a = 0; a < 64; ++a)
        for (uint32_t b = 0; b < 64; ++b) EXPECT_EQ(f->mul(a, b), f->mul(b, a));
}

TEST(Field, AxiomsSampledLargeFields) {
    check_axioms(Field::extension(2, 16), false);
    check_axioms(Field::extension_of(Field::extension(2, 6), 3), false);  // GF(64^3), no tables
}

TEST(Field, BaseFieldImageAgrees) {
    // constants of the extension behave exactly like the base field
    struct Case {
        FieldPtr base, ext;
    };
    for (const auto& c : {Case{Field::prime(7), Field::extension(7, 2)},
                          Case{Field::extension(2, 6),
                               Field::extension_of(Field::extension(2, 6), 2)}}) {
        const uint64_t b = c.base->order();
        ASSERT_EQ(c.ext->base(), c.base);
        for (uint32_t x = 0; x < b; ++x) {
            for (uint32_t y = 0; y < b; ++y) {
                EXPECT_EQ(c.ext->add(x, y), c.base->add(x, y));
                EXPECT_EQ(c.ext->mul(x, y), c.base->mul(x, y));
            }
            if (x != 0) EXPECT_EQ(c.ext->inv(x), c.base->inv(x));
        }
    }
}

TEST(Field, TowerCoefficientRoundTrip) {
    auto f64 = Field::extension(2, 6);
    auto f64_2 = Field::extension_of(f64, 2);
    ASSERT_EQ(f64_2->order(), 4096u);
    ASSERT_EQ(f64_2->degree(), 2u);
    for (uint32_t v : {0u, 1u, 63u, 64u, 100u, 4095u}) {
        const auto c = f64_2->to_base_coeffs(v);
        ASSERT_EQ(c.size(), 2u);
        EXPECT_LT(c[0], 64u);
        EXPECT_LT(c[1], 64u);
        EXPECT_EQ(f64_2->from_base_coeffs(c), v);
    }
}

TEST(Field, LargeFieldDiscreteLog) {
    auto big = Field::extension_of(Field::extension(2, 6), 3);  // GF(2^18)
    ASSERT_EQ(big->order(), 1u << 18);
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const uint64_t idx = rng.below(big->order());
        EXPECT_EQ(big->index_of(big->element_at(idx)), idx);
    }
    EXPECT_EQ(big->element_at(1), 1u);
}

TEST(Field, InstancesAreCanonical) {
    EXPECT_EQ(Field::prime(7).get(), Field::prime(7).get());
    EXPECT_EQ(Field::extension(2, 6).get(), Field::extension(2, 6).get());
    EXPECT_NE(Field::extension(2, 6).get(), Field::extension(2, 12).get());
    EXPECT_EQ(field_of_order(64).get(), Field::extension(2, 6).get());
    EXPECT_THROW(field_of_order(12), std::invalid_argument);
}

TEST(Field, ElementOpsAndErrors) {
    auto f7 = Field::prime(7);
    auto f8 = Field::extension(2, 3);
    FieldElement a(f7, 3), b(f7, 5);
    EXPECT_EQ((a + b).value(), 1u);
    EXPECT_EQ((a * a.inverse()).value(), 1u);
    EXPECT_THROW(a + FieldElement(f8, 1), std::invalid_argument);
    EXPECT_THROW(FieldElement(f7, 0).inverse(), std::domain_error);
    EXPECT_THROW(FieldElement(f7, 9), std::invalid_argument);
    EXPECT_THROW(f7->mul(3, 9), std::invalid_argument);
}
