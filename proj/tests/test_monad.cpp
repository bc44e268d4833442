#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace monad_forge;

namespace
{

const RationalField QQ;

Polynomial<RationalField> mono(const SpaceSpec &s, std::vector<Monomial::exponent_type> e)
{
    return Polynomial<RationalField>::monomial(s, QQ, Monomial(std::move(e)), 1);
}

} // namespace

TEST(Exists, SpecExamples)
{
    EXPECT_TRUE(exists_monad(1, 4, 1, 3));
    EXPECT_EQ(existence_conditions(1, 4, 1, 3), "a");
    EXPECT_FALSE(exists_monad(1, 3, 1, 3));
    EXPECT_EQ(existence_conditions(1, 3, 1, 3), "");
    for (int n = 0; n <= 6; ++n) {
        for (int k = 1; k <= 6; ++k) {
            EXPECT_TRUE(existence_condition_a(k, 2 * n + 2 * k, k, 2 * n + 1));
        }
    }
    EXPECT_THROW(exists_monad(0, 4, 1, 3), std::invalid_argument);
}

TEST(Exists, MonotoneInBeta)
{
    for (int a = 1; a <= 5; ++a) {
        for (int g = 1; g <= 5; ++g) {
            for (int n = 1; n <= 12; ++n) {
                for (int b = 1; b < 30; ++b) {
                    if (exists_monad(a, b, g, n)) {
                        EXPECT_TRUE(exists_monad(a, b + 1, g, n));
                    }
                }
            }
        }
    }
}

TEST(SegreDimension, SpecExamples)
{
    for (int m = 1; m <= 6; ++m) {
        EXPECT_EQ(segre_dimension(SpaceSpec(std::vector<int>(static_cast<std::size_t>(m), 1)),
                                  MultiDegree::constant(static_cast<std::size_t>(m), 1)),
                  (1 << m) - 1);
    }
    EXPECT_EQ(segre_dimension(SpaceSpec{1, 2}, {1, 2}), 11);
    EXPECT_EQ(segre_dimension(SpaceSpec{3}, {1}), 3);
    EXPECT_THROW(segre_dimension(SpaceSpec{1, 1}, {1, 0}), std::invalid_argument);
}

TEST(Floystad, SmallestInstance)
{
    const auto inst = build_floystad(1, 1);
    const SpaceSpec s{3};
    auto v = [&](std::size_t i) { return Polynomial<RationalField>::variable(s, QQ, 0, i); };
    EXPECT_EQ(inst.B.rows(), 1U);
    EXPECT_EQ(inst.B.cols(), 4U);
    EXPECT_EQ(inst.B.at(0, 0), v(0));
    EXPECT_EQ(inst.B.at(0, 1), v(1));
    EXPECT_EQ(inst.B.at(0, 2), v(2));
    EXPECT_EQ(inst.B.at(0, 3), v(3));
    // the y-band of A runs backwards so that every k works, see build_floystad
    EXPECT_EQ(inst.A.at(0, 0), -v(3));
    EXPECT_EQ(inst.A.at(1, 0), -v(2));
    EXPECT_EQ(inst.A.at(2, 0), v(1));
    EXPECT_EQ(inst.A.at(3, 0), v(0));
    EXPECT_TRUE(mat_mul(inst.B, inst.A).is_zero());
}

TEST(Floystad, AscendingBandsOnlyWorkForOneRow)
{
    // Forward bands in both matrices: B A = 0 for k = 1 and fails for k = 2.
    for (int k = 1; k <= 2; ++k) {
        const int n = 1;
        const SpaceSpec s{3};
        auto x = [&](int i) { return Polynomial<RationalField>::variable(s, QQ, 0, static_cast<std::size_t>(i)); };
        auto y = [&](int i) { return Polynomial<RationalField>::variable(s, QQ, 0, static_cast<std::size_t>(n + 1 + i)); };
        const auto uk = static_cast<std::size_t>(k);
        LinMatrix<RationalField> b(s, QQ, uk, 2 * n + 2 * uk, {1}), a(s, QQ, 2 * n + 2 * uk, uk, {1});
        for (std::size_t i = 0; i < uk; ++i) {
            for (int t = 0; t <= n; ++t) {
                const auto ut = static_cast<std::size_t>(t);
                b.set(i, i + ut, x(t));
                b.set(i, n + uk + i + ut, y(t));
                a.set(i + ut, i, -y(t));
                a.set(n + uk + i + ut, i, x(t));
            }
        }
        EXPECT_EQ(mat_mul(b, a).is_zero(), k == 1) << k;
    }
}

TEST(Floystad, AllSmallInstancesAreComplexes)
{
    for (int n = 0; n <= 3; ++n) {
        for (int k = 1; k <= 3; ++k) {
            const auto inst = build_floystad(n, k);
            EXPECT_EQ(inst.B.rows(), static_cast<std::size_t>(k));
            EXPECT_EQ(inst.B.cols(), static_cast<std::size_t>(2 * n + 2 * k));
            EXPECT_TRUE(mat_mul(inst.B, inst.A).is_zero()) << n << "," << k;
            EXPECT_NO_THROW(inst.validate());
            if (n >= 1) {
                // through the Segre embedding of a product with the same N
                const int m = n == 1 ? 2 : (n == 3 ? 3 : 0);
                if (m > 0) {
                    const auto lifted = lift_monad(inst, segre_substitution(
                                                             SpaceSpec(std::vector<int>(static_cast<std::size_t>(m), 1)),
                                                             MultiDegree::constant(static_cast<std::size_t>(m), 1)));
                    EXPECT_TRUE(mat_mul(lifted.B, lifted.A).is_zero());
                }
            }
        }
    }
    const auto lifted = lift_monad(build_floystad(2, 2), segre_substitution(SpaceSpec{1, 2}, {1, 1}));
    EXPECT_TRUE(mat_mul(lifted.B, lifted.A).is_zero());
}

TEST(Segre, BinaryTables)
{
    for (int m = 1; m <= 4; ++m) {
        const auto sub = segre_substitution(SpaceSpec(std::vector<int>(static_cast<std::size_t>(m), 1)),
                                            MultiDegree::constant(static_cast<std::size_t>(m), 1));
        ASSERT_EQ(sub.size(), std::size_t{1} << m);
        for (std::uint64_t j = 0; j < sub.size(); ++j) {
            EXPECT_EQ(sub.images[j].exponents(), oracle::binary_table_row(m, j)) << m << ":" << j;
        }
    }
}

TEST(Segre, HardCodedRowsForThreeFactors)
{
    // coordinates of (P^1)^3 ordered a10 a11 a20 a21 a30 a31
    const auto sub = segre_substitution(SpaceSpec{1, 1, 1}, {1, 1, 1});
    const std::vector<std::vector<Monomial::exponent_type>> table{
        {1, 0, 1, 0, 1, 0}, {1, 0, 1, 0, 0, 1}, {1, 0, 0, 1, 1, 0}, {1, 0, 0, 1, 0, 1},
        {0, 1, 1, 0, 1, 0}, {0, 1, 1, 0, 0, 1}, {0, 1, 0, 1, 1, 0}, {0, 1, 0, 1, 0, 1}};
    for (std::size_t j = 0; j < 8; ++j) {
        EXPECT_EQ(sub.images[j].exponents(), table[j]);
    }
    // x_0 -> a10 a20 a30 and y_0 (coordinate n + 1 = 4) -> a11 a20 a30
    EXPECT_EQ(sub.images[0].exponents(), table[0]);
    EXPECT_EQ(sub.images[4].exponents(), table[4]);
}

TEST(Segre, ProductWithPlane)
{
    const SpaceSpec s{1, 2};
    const auto sub = segre_substitution(s, {1, 1});
    EXPECT_EQ(sub.images, monomial_basis(s, {1, 1}));
    EXPECT_EQ(sub.size(), 6U);
}

TEST(Lift, SpecExamples)
{
    const SpaceSpec s{1, 1};
    const auto lifted = lift_monad(build_floystad(1, 1), segre_substitution(s, {1, 1}));
    EXPECT_EQ(lifted.B.at(0, 0), mono(s, {1, 0, 1, 0}));
    EXPECT_EQ(lifted.B.at(0, 1), mono(s, {1, 0, 0, 1}));
    EXPECT_EQ(lifted.B.at(0, 2), mono(s, {0, 1, 1, 0}));
    EXPECT_EQ(lifted.B.at(0, 3), mono(s, {0, 1, 0, 1}));
    EXPECT_EQ(lifted.B.entry_degree(), MultiDegree({1, 1}));

    const auto l3 = lift_monad(build_floystad(3, 1), segre_substitution(SpaceSpec{1, 1, 1}, {1, 1, 1}));
    EXPECT_EQ(l3.B.rows(), 1U);
    EXPECT_EQ(l3.B.cols(), 8U);
    std::set<Monomial> seen;
    for (std::size_t c = 0; c < 8; ++c) {
        ASSERT_EQ(l3.B.at(0, c).num_terms(), 1U);
        seen.insert(l3.B.at(0, c).terms().begin()->first);
    }
    EXPECT_EQ(seen.size(), 8U);

    EXPECT_THROW(lift_monad(build_floystad(1, 1), segre_substitution(SpaceSpec{1, 1, 1}, {1, 1, 1})),
                 DimensionMismatch);
}

TEST(Verify, SpecExamples)
{
    EXPECT_EQ(verify_monad(build_floystad(1, 1), ExhaustiveStrategy{{3, 5}}).verdict, Verdict::pass);
    const auto lifted = build_monad(p1_power_spec(2, 1));
    const auto cert = verify_monad(lifted, ExhaustiveStrategy{{3, 5, 7}});
    EXPECT_EQ(cert.verdict, Verdict::pass);
    ASSERT_EQ(cert.steps.size(), 3U);

    auto doctored = build_floystad(1, 2);
    for (std::size_t r = 0; r < doctored.A.rows(); ++r) {
        doctored.A.set(r, 1, doctored.A.at(r, 0));
    }
    const auto bad = verify_monad(doctored, ExhaustiveStrategy{{3}});
    EXPECT_EQ(bad.verdict, Verdict::refuted_step);
    EXPECT_EQ(bad.steps[2].status, StepStatus::fail);
    EXPECT_FALSE(bad.steps[2].value.at("failures").empty());
    EXPECT_EQ(bad.steps[1].status, StepStatus::pass);
}

TEST(Verify, CapGivesInconclusive)
{
    const auto inst = build_floystad(3, 1);
    const auto cert = verify_monad(inst, ExhaustiveStrategy{{101}, 1000});
    EXPECT_EQ(cert.verdict, Verdict::inconclusive);
}

TEST(DisplayRanks, SpecExamples)
{
    EXPECT_EQ(display_ranks(1, 4, 1), (DisplayRanks{3, 2, 3, 3}));
    for (int n = 1; n <= 4; ++n) {
        for (int k = 1; k <= 4; ++k) {
            const auto r = display_ranks(k, 2 * n + 2 * k, k);
            EXPECT_EQ(r.schwarzenberger, 2 * n + k);
            EXPECT_EQ(r.kernel, r.cohomology + k);
            EXPECT_EQ(r.cokernel, r.cohomology + k);
        }
    }
    EXPECT_EQ(display_ranks(1, 16, 1).cohomology, 14);
    EXPECT_THROW(display_ranks(2, 3, 1), std::invalid_argument);
    // n = 0 leaves a rank-zero cohomology bundle
    EXPECT_THROW(display_ranks(2, 4, 2), std::invalid_argument);
}

TEST(BuildMonad, GeneralRanksAreMonads)
{
    struct Case {
        std::vector<int> dims;
        std::vector<int> w;
        int a, b, g;
    };
    const std::vector<Case> cases{
        {{1, 1}, {1, 1}, 1, 4, 1}, {{1, 1}, {1, 1}, 1, 6, 1}, {{1, 1}, {1, 1}, 2, 6, 1}, {{1, 1}, {1, 1}, 1, 6, 2},
        {{1, 1}, {1, 1}, 2, 7, 2}, {{2}, {1}, 1, 4, 1},       {{2}, {1}, 1, 6, 2},       {{1, 2}, {1, 1}, 1, 6, 1},
        {{1, 1}, {1, 2}, 1, 7, 1}, {{1, 1}, {2, 1}, 2, 9, 1}, {{3, 3}, {1, 1}, 1, 16, 1}, {{1, 1, 1}, {1, 1, 1}, 1, 8, 1}};
    for (const auto &c : cases) {
        MonadSpec s{SpaceSpec(c.dims), MultiDegree(c.w), c.a, c.b, c.g, Flavor::type_ii, 0};
        s.flavor = natural_flavor(s.space, s.weights);
        const auto inst = build_monad(s);
        EXPECT_EQ(inst.A.cols(), static_cast<std::size_t>(c.a));
        EXPECT_EQ(inst.B.rows(), static_cast<std::size_t>(c.g));
        const auto cert = verify_monad(inst, ExhaustiveStrategy{{3}});
        EXPECT_EQ(cert.verdict, Verdict::pass) << s.space.to_string() << s.weights.to_string() << c.a << c.b << c.g;
    }
    MonadSpec small{SpaceSpec{1, 1}, {1, 1}, 3, 7, 1, Flavor::type_i, 0};
    EXPECT_TRUE(exists_monad(3, 7, 1, 3));
    EXPECT_THROW(build_monad(small), NotConstructible);
}

TEST(BuildMonad, PowerOfLinesMatchesLift)
{
    for (int m = 1; m <= 3; ++m) {
        for (int k = 1; k <= 2; ++k) {
            const auto inst = build_monad(p1_power_spec(m, k));
            const auto direct = lift_monad(build_floystad((1 << (m - 1)) - 1, k),
                                           segre_substitution(inst.spec.space, inst.spec.weights));
            EXPECT_EQ(inst.A, direct.A);
            EXPECT_EQ(inst.B, direct.B);
        }
    }
    EXPECT_THROW(p1_power_spec(0, 1), std::invalid_argument);
}

TEST(Spec, Validation)
{
    MonadSpec bad{SpaceSpec{2, 2}, {1, 1}, 1, 8, 1, Flavor::type_i, 0};
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    MonadSpec w{SpaceSpec{1, 1}, {1, 2}, 1, 8, 1, Flavor::type_i, 0};
    EXPECT_THROW(w.validate(), std::invalid_argument);
    EXPECT_EQ(natural_flavor(SpaceSpec{3, 3}, {1, 1}), Flavor::type_i);
    EXPECT_EQ(natural_flavor(SpaceSpec{1, 2}, {1, 1}), Flavor::type_ii);
    EXPECT_EQ(flavor_from_string("p1power"), Flavor::p1_power);
}

TEST(Json, MonadRoundTripIsExact)
{
    for (const auto &spec : {p1_power_spec(2, 1), p1_power_spec(3, 2),
                             MonadSpec{SpaceSpec{1, 2}, {1, 1}, 1, 6, 1, Flavor::type_ii, 0}}) {
        const auto inst = build_monad(spec);
        const auto text = dump(to_json(inst));
        const auto back = monad_from_json(json::parse(text));
        EXPECT_EQ(back.spec, inst.spec);
        EXPECT_EQ(back.A, inst.A);
        EXPECT_EQ(back.B, inst.B);
        EXPECT_EQ(dump(to_json(back)), text);
        const auto c1 = dump(to_json(verify_monad(inst, ExhaustiveStrategy{{3}})));
        const auto c2 = dump(to_json(verify_monad(back, ExhaustiveStrategy{{3}})));
        EXPECT_EQ(c1, c2);
    }
    EXPECT_THROW(monad_from_json(json::parse(R"({"schema":"other"})")), std::invalid_argument);
}
