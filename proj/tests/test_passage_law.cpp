#include <doctest.h>

#include <cmath>

#include "fpp/passage_law.hpp"
#include "fpp/random.hpp"

using namespace fpp;

namespace {

PassageLaw mixed() { return PassageLaw(0.25, 0.40, ConstantPart{1.0}); }

std::vector<PassageLaw> sample_laws()
{
    return {
        PassageLaw::dirac(1.0),
        mixed(),
        PassageLaw(0.0, 0.4, UniformPart{0.0, 10.0}),
        PassageLaw(0.1, 0.2, ExponentialPart{0.5}),
        PassageLaw(0.3, 0.1, AtomsPart{{{1.0, 1.0}, {2.0, 3.0}, {7.0, 1.0}}}),
        PassageLaw(0.5, 0.0, UniformPart{0.0, 4.0}),
    };
}

} // namespace

TEST_CASE("quantile examples")
{
    for (double u : {0.0, 0.3, 0.999}) CHECK(PassageLaw::dirac(1.0).quantile(u) == ExtendedTime(1.0));
    const PassageLaw all_inf(0.0, 1.0, ConstantPart{1.0});
    CHECK(!all_inf.quantile(0.0).is_finite());
    CHECK(!all_inf.quantile(0.5).is_finite());
    CHECK(mixed().quantile(0.1) == ExtendedTime::zero());
    CHECK(mixed().quantile(0.3) == ExtendedTime(1.0));
    CHECK(mixed().quantile(0.7) == ExtendedTime::infinity());
    CHECK_THROWS_AS(mixed().quantile(1.0), DomainError);
    CHECK_THROWS_AS(mixed().quantile(-0.1), DomainError);
}

TEST_CASE("extended time arithmetic")
{
    CHECK((ExtendedTime(2.0) + ExtendedTime::infinity()) == ExtendedTime::infinity());
    CHECK(ExtendedTime(2.0) < ExtendedTime::infinity());
    CHECK(std::min(ExtendedTime(3.0), ExtendedTime(1.5)) == ExtendedTime(1.5));
    CHECK_THROWS_AS(ExtendedTime(-1.0), DomainError);
    CHECK_THROWS_AS(ExtendedTime(std::nan("")), DomainError);
}

TEST_CASE("truncate")
{
    CHECK(truncate(PassageLaw::dirac(5.0), 3.0) == PassageLaw::dirac(3.0));
    CHECK(truncate(PassageLaw::dirac(1.0), 3.0) == PassageLaw::dirac(1.0));

    const PassageLaw law(0.0, 0.4, UniformPart{0.0, 10.0});
    const PassageLaw tr = truncate(law, 2.0);
    CHECK(tr.p_inf() == 0.4);
    CHECK(tr.p_zero() == 0.0);
    // the finite mass above 2 sits in an atom at 2
    CHECK(tr.cdf(2.0) - tr.cdf(std::nextafter(2.0, 0.0)) == doctest::Approx(0.8 * 0.6));
    CHECK(tr.cdf(2.0) == doctest::Approx(0.6));
    CHECK_THROWS_AS(truncate(law, 0.0), DomainError);
}

TEST_CASE("binarize")
{
    CHECK(binarize(PassageLaw::dirac(1.0)) == PassageLaw::dirac(1.0));
    CHECK(binarize(mixed()) == PassageLaw(0.0, 0.4, ConstantPart{1.0}));
    const PassageLaw b = binarize(PassageLaw(0.0, 1.0, ConstantPart{2.0}));
    CHECK(b.p_inf() == 1.0);
}

TEST_CASE("three level")
{
    const PassageLaw law(0.5, 0.2, ConstantPart{2.0});
    CHECK(three_level(law, 2.0) == law);
    CHECK(three_level(PassageLaw::dirac(1.0), 1.0) == PassageLaw::dirac(1.0));
    const PassageLaw u(0.0, 0.0, UniformPart{0.0, 4.0});
    const PassageLaw t = three_level(u, 2.0);
    CHECK(t.p_zero() == 0.0);
    CHECK(t.p_inf() == doctest::Approx(0.5));
    CHECK(t.cdf(2.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(three_level(u, -1.0), DomainError);
}

TEST_CASE("critical atom law")
{
    const PassageLaw a = critical_atom_law(1.0, 0.2, 0.5);
    CHECK(a.p_zero() == 0.5);
    CHECK(a.p_finite() == doctest::Approx(0.2));
    CHECK(a.p_inf() == doctest::Approx(0.3));
    CHECK(a.cdf(1.0) == doctest::Approx(0.7));
    const PassageLaw b = critical_atom_law(1.0, 0.5, 0.5);
    CHECK(b.p_inf() == 0.0);
    CHECK(b.cdf(1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(critical_atom_law(1.0, 0.6, 0.5), DomainError);
    CHECK_THROWS_AS(critical_atom_law(1.0, 0.0, 0.5), DomainError);
}

TEST_CASE("quantile is monotone on a fine grid")
{
    for (const auto& law : sample_laws()) {
        ExtendedTime prev = ExtendedTime::zero();
        for (int i = 0; i < 1000; ++i) {
            const ExtendedTime q = law.quantile(i / 1000.0);
            CHECK(prev <= q);
            prev = q;
        }
    }
}

TEST_CASE("pathwise coupling of the law transforms")
{
    for (const auto& law : sample_laws()) {
        for (double K : {0.5, 1.0, 2.0, 3.0}) {
            const PassageLaw lo = truncate(law, K);
            const PassageLaw hi = three_level(law, K);
            for (int i = 0; i < 1000; ++i) {
                const double u = (i + 0.5) / 1000.0;
                CHECK(lo.quantile(u) <= law.quantile(u));
                CHECK(law.quantile(u) <= hi.quantile(u));
                // the law-level transform agrees with the edge-wise map
                CHECK(lo.sample(u) == LawTransform::truncate_at(K).apply(law.sample(u)));
                CHECK(binarize(law).sample(u) == LawTransform::binarized().apply(law.sample(u)));
            }
        }
    }
}

TEST_CASE("closed-form cdf matches the empirical cdf of quantile draws")
{
    constexpr int draws = 100000;
    for (const auto& law : sample_laws()) {
        for (double m : {0.0, 0.5, 1.0, 2.5, 6.0}) {
            int hits = 0;
            for (int i = 0; i < draws; ++i) hits += law.sample(to_unit(hash_pair(99, static_cast<std::uint64_t>(i)))) <= m;
            const double p = law.cdf(m);
            const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / draws);
            CHECK(std::abs(hits / double(draws) - p) <= 3 * se + 1e-12);
        }
    }
}

TEST_CASE("law JSON round trip and content hash")
{
    for (const auto& law : sample_laws()) {
        CHECK(law_from_json(law_to_json(law)) == law);
        CHECK(law.content_hash().size() == 40u);
    }
    CHECK(mixed().content_hash() != PassageLaw::dirac(1.0).content_hash());
    CHECK_THROWS_AS(law_from_json(nlohmann::json{{"p_zero", 0.7}, {"p_inf", 0.5}, {"finite", {{"kind", "constant"}, {"value", 1}}}}),
                    ConfigError);
    CHECK_THROWS_AS(law_from_json(nlohmann::json{{"finite", {{"kind", "gamma"}}}}), ConfigError);
}

TEST_CASE("invalid laws are rejected")
{
    CHECK_THROWS_AS(PassageLaw(0.6, 0.6, ConstantPart{1.0}), DomainError);
    CHECK_THROWS_AS(PassageLaw(0.0, 0.0, ConstantPart{0.0}), DomainError);
    CHECK_THROWS_AS(PassageLaw(0.0, 0.0, UniformPart{2.0, 1.0}), DomainError);
    CHECK_THROWS_AS(PassageLaw(0.0, 0.0, ExponentialPart{-1.0}), DomainError);
}
