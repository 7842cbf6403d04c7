#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "insep/artin/oracle.hpp"
#include "insep/kaehler/differentials.hpp"
#include "support/specs.hpp"

using namespace insep;
using namespace insep::artin;
using namespace testing_support;

namespace {

FieldTower f2t() { return FieldTower::rational(2, {"t"}); }
FieldTower sqrt_t() { return with_alg(f2t(), "u", "u^2 + t"); }

std::vector<unsigned> sorted_orders(const TruncatedStructure& S) {
    std::vector<unsigned> m;
    for (const auto& e : S.nilpotents) m.push_back(e.order);
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

TEST(BaseChangeStructure, SpecExamples) {
    FieldTower K = sqrt_t();
    auto S1 = base_change_structure(K, make_spec(K, {{"t", 1}}));
    EXPECT_EQ(S1.edim(), 1u);
    EXPECT_EQ(S1.residue_degree(), 1u);
    EXPECT_EQ(S1.nilpotents[0].order, 1u);

    auto S2 = base_change_structure(K, make_spec(K, {{"t", 2}}));
    EXPECT_EQ(S2.edim(), 1u);
    EXPECT_EQ(S2.residue_degree(), 2u);
    EXPECT_EQ(S2.nilpotents[0].order, 1u);

    FieldTower k = f2t();
    auto S3 = base_change_structure(k, make_spec(k, {{"t", 1}}));
    EXPECT_EQ(S3.edim(), 0u);
    EXPECT_EQ(S3.residue_degree(), 2u);
}

TEST(BaseChangeStructure, RendersNilpotent) {
    FieldTower K = sqrt_t();
    auto S = base_change_structure(K, make_spec(K, {{"t", 1}}));
    EXPECT_EQ(S.nilpotents[0].text, "z1 + u");
}

TEST(EdimOfBaseChange, SpecExamples) {
    FieldTower K = sqrt_t();
    EXPECT_EQ(edim_of_base_change(K, make_spec(K, {{"t", 1}})), 1u);
    FieldTower k = f2t();
    EXPECT_EQ(edim_of_base_change(k, make_spec(k, {{"t", 2}})), 0u);
    FieldTower K2 = with_alg(FieldTower::rational(2, {"t1", "t2"}), "u", "u^2 + t1");
    EXPECT_EQ(edim_of_base_change(K2, make_spec(K2, {{"t1", 1}, {"t2", 1}})), 1u);
    EXPECT_EQ(ejump_field(K2, make_spec(K2, {{"t1", 1}, {"t2", 1}})), 1u);
    EXPECT_EQ(kaehler::schroer_predicted_edim(K2, kaehler::Reference::Base), 1u);
}

TEST(EdimOfBaseChange, Validation) {
    FieldTower k = f2t();
    EXPECT_THROW(edim_of_base_change(k, make_spec(k, {{"0", 1}})), InvalidSpec);
    EXPECT_THROW(edim_of_base_change(k, make_spec(k, {{"t^2", 1}})), InvalidSpec);
    EXPECT_THROW(edim_of_base_change(k, make_spec(k, {{"t", 1}, {"t", 1}})), InvalidSpec);
    EXPECT_THROW(edim_of_base_change(k, InseparableExtensionSpec{}), InvalidSpec);
}

TEST(EdimOfBaseChange, DependentEntriesAreCountedOnce) {
    // K = k(u, v), u^2 = t, v^2 = s/u; s = (v w)^2 once w = t^(1/4) is
    // adjoined, so the (s, 1) entry lands on a root through w. The cotangent
    // space is one-dimensional, matching pdeg - trdeg = 1.
    FieldTower k = FieldTower::rational(2, {"t", "s"});
    FieldTower K = with_alg(k, "u", "u^2 + t");
    K = with_alg(K, "v", "v^2 + s/u");
    ASSERT_EQ(kaehler::schroer_predicted_edim(K, kaehler::Reference::Base), 1u);
    auto spec = make_spec(K, {{"t", 2}, {"s", 1}});
    EXPECT_EQ(edim_of_base_change(K, spec), 1u);
    EXPECT_EQ(edim_of_base_change(K, make_spec(K, {{"t", 1}, {"s", 1}})), 1u);
    auto S = base_change_structure(K, spec);
    EXPECT_EQ(S.edim(), 1u);
    EXPECT_EQ(S.nilpotents[0].order, 2u);
    auto rep = verify_structure_oracle(K, spec, S);
    EXPECT_TRUE(rep.passed()) << rep.detail;
}

TEST(Oracle, SpecExamples) {
    FieldTower K = sqrt_t();
    auto spec = make_spec(K, {{"t", 1}});
    auto rep = verify_structure_oracle(K, spec, base_change_structure(K, spec));
    EXPECT_TRUE(rep.passed()) << rep.detail;
    EXPECT_EQ(rep.nilpotency_index, std::vector<std::size_t>{2});
    EXPECT_EQ(rep.quotient_dim, 1u);

    FieldTower k = f2t();
    auto spec2 = make_spec(k, {{"t", 1}});
    auto rep2 = verify_structure_oracle(k, spec2, base_change_structure(k, spec2));
    EXPECT_TRUE(rep2.passed()) << rep2.detail;
    EXPECT_EQ(rep2.algebra_dim, 2u);

    FieldTower Q = with_root(f2t(), "w", "t", 2);
    auto spec3 = make_spec(Q, {{"t", 2}});
    auto S3 = base_change_structure(Q, spec3);
    ASSERT_EQ(S3.edim(), 1u);
    EXPECT_EQ(S3.nilpotents[0].order, 2u);
    auto rep3 = verify_structure_oracle(Q, spec3, S3);
    EXPECT_TRUE(rep3.passed()) << rep3.detail;
    EXPECT_EQ(rep3.nilpotency_index, std::vector<std::size_t>{4});
}

TEST(Oracle, DetectsWrongClaims) {
    FieldTower K = sqrt_t();
    auto spec = make_spec(K, {{"t", 1}});
    auto S = base_change_structure(K, spec);
    S.nilpotents[0].order = 2;
    auto rep = verify_structure_oracle(K, spec, S);
    EXPECT_FALSE(rep.nilpotency_ok);
    EXPECT_FALSE(rep.dimension_ok);
    EXPECT_NE(rep.detail.find("(b)"), std::string::npos);

    auto S2 = base_change_structure(K, spec);
    S2.nilpotents.clear();
    auto rep2 = verify_structure_oracle(K, spec, S2);
    EXPECT_FALSE(rep2.quotient_ok);
}

TEST(Oracle, CapExceeded) {
    FieldTower k = FieldTower::rational(3, {"t"});
    auto spec = make_spec(k, {{"t", 7}});
    auto S = base_change_structure(k, spec);
    EXPECT_THROW(verify_structure_oracle(k, spec, S), CapExceeded);
    EXPECT_THROW(verify_structure_oracle(k, make_spec(k, {{"t", 2}}), S, 8), CapExceeded);
}

TEST(ArtinProperties, SchroerIdentityOnRandomTowers) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 25; ++it) {
        FieldTower K = random_tower(rng);
        auto spec = InseparableExtensionSpec::height_one(K);
        EXPECT_EQ(edim_of_base_change(K, spec), kaehler::pdeg(K, kaehler::Reference::Base) - kaehler::trdeg(K, kaehler::Reference::Base))
            << K.describe();
    }
}

TEST(ArtinProperties, HeightOneSaturation) {
    std::mt19937_64 rng(23);
    RandomTowerOptions opt;
    opt.budget = 16;
    for (int it = 0; it < 15; ++it) {
        FieldTower K = random_tower(rng, opt);
        for (std::size_t i = 0; i < K.nparams(); ++i) {
            InseparableExtensionSpec one;
            one.entries.push_back({insep::ff::RatFunc::param(K.base_context(), i), 1});
            const auto e1 = edim_of_base_change(K, one);
            EXPECT_EQ(edim_of_base_change(K, one.with_exponent(2)), e1) << K.describe();
            EXPECT_EQ(edim_of_base_change(K, one.with_exponent(3)), e1) << K.describe();
        }
        auto all = InseparableExtensionSpec::height_one(K);
        if (K.degree() * all.with_exponent(2).degree(K.characteristic()) <= 64) {
            EXPECT_EQ(edim_of_base_change(K, all.with_exponent(2)), edim_of_base_change(K, all)) << K.describe();
        }
    }
}

TEST(ArtinProperties, OrderIndependenceAndOracleAgreement) {
    std::mt19937_64 rng(25);
    RandomTowerOptions opt;
    opt.budget = 16;
    int checked = 0;
    for (int it = 0; it < 60 && checked < 20; ++it) {
        FieldTower K = random_tower(rng, opt);
        auto spec = random_spec(rng, K, 16);
        if (!spec) continue;
        ++checked;
        auto S = base_change_structure(K, *spec);
        auto rep = verify_structure_oracle(K, *spec, S);
        EXPECT_TRUE(rep.passed()) << K.describe() << " : " << rep.detail;
        auto rev = *spec;
        std::reverse(rev.entries.begin(), rev.entries.end());
        auto R = base_change_structure(K, rev);
        EXPECT_EQ(R.edim(), S.edim());
        EXPECT_EQ(R.residue_degree(), S.residue_degree());
        EXPECT_EQ(sorted_orders(R), sorted_orders(S));
    }
    EXPECT_GE(checked, 10);
}
