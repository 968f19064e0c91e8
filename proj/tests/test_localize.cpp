#include "doctest.h"

#include <random>

#include "chow_oracle.hpp"
#include "test_util.hpp"

using namespace equiloc;
using testutil::chr;
using testutil::make_poly;

namespace {

// Random Chern polynomial in the classes of the given bundles, each term of
// the stated weighted degree.
ChernPolynomial random_chern_poly(std::mt19937_64& rng, const std::vector<EquivariantBundle>& bundles,
                                  std::uint32_t degree, int max_terms = 3) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<std::size_t> pick(0, bundles.empty() ? 0 : bundles.size() - 1);
    std::vector<ChernPolynomial::Term> terms;
    const int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        ChernPolynomial::Term t;
        t.coefficient = Rational(coeff(rng));
        std::uint32_t left = degree;
        while (left > 0) {
            const std::size_t b = pick(rng);
            std::uniform_int_distribution<std::uint32_t> idx(
                1, std::min<std::uint32_t>(left, static_cast<std::uint32_t>(bundles[b].rank)));
            const std::uint32_t c = idx(rng);
            t.factors.push_back({b, c, 1});
            left -= c;
        }
        terms.push_back(std::move(t));
    }
    return ChernPolynomial(std::move(terms), degree);
}

} // namespace

TEST_CASE("euler classes at fixed points") {
    SUBCASE("projective line") {
        ProjectiveSpaceAction line(1, {chr({0}), chr({1})});
        auto space = projective_fixed_points(line);
        auto e0 = euler_class(space, 0);
        CHECK(e0.scalar() == Rational(1));
        CHECK(e0.factors() == CharacterMultiset{{chr({1}), 1}});
    }
    SUBCASE("cone point of the quadric") {
        auto space = projective_fixed_points(testutil::quadric_action());
        auto e = euler_class(space, 3);
        // (1-a)(-1-a)(-a) t^3 = (t1-t2)(t1+t2)t2 after canonicalization
        CHECK(e.scalar() == Rational(1));
        CHECK(e.factors()
              == CharacterMultiset{{chr({1, -1}), 1}, {chr({1, 1}), 1}, {chr({0, 1}), 1}});
        MultiPoly prod = MultiPoly::linear_form(chr({1, -1})) * MultiPoly::linear_form(chr({-1, -1}))
                       * MultiPoly::linear_form(chr({0, -1}));
        CHECK(e.expand() == prod);
    }
    SUBCASE("spaces reject zero tangent characters at construction") {
        CHECK_THROWS_AS(FixedPointSpace(2, {FixedPoint{"p", {chr({0, 0})}}}), Error);
    }
    SUBCASE("euler equals the self-restriction of the point class") {
        std::mt19937_64 rng(53);
        for (int trial = 0; trial < 10; ++trial) {
            auto action = testutil::random_rank1_action(rng, 3);
            auto space = projective_fixed_points(action);
            for (std::size_t p = 0; p <= 3; ++p)
                CHECK(euler_class(space, p).expand() == restrict_class(point_class(action, p), p));
        }
    }
}

TEST_CASE("integration over fixed points") {
    SUBCASE("point classes integrate to one") {
        auto action = testutil::quadric_action();
        auto space = projective_fixed_points(action);
        for (std::size_t i = 0; i < 4; ++i) {
            std::vector<MultiPoly> values;
            for (std::size_t p = 0; p < 4; ++p)
                values.push_back(restrict_class(point_class(action, i), p));
            CHECK(integrate(space, values) == LocalizedClass::from_rational(2, 1));
        }
    }
    SUBCASE("the fundamental class of the line integrates to zero") {
        ProjectiveSpaceAction line(1, {chr({0}), chr({1})});
        auto space = projective_fixed_points(line);
        std::vector<MultiPoly> ones(2, MultiPoly::constant(1, 1));
        CHECK(integrate(space, ones).is_zero());
    }
    SUBCASE("the hyperplane class of the line integrates to one") {
        ProjectiveSpaceAction line(1, {chr({0}), chr({1})});
        auto space = projective_fixed_points(line);
        EquivariantClass h(line, make_poly(2, {{{0, 1}, 1}}));
        std::vector<MultiPoly> values{restrict_class(h, 0), restrict_class(h, 1)};
        CHECK(integrate(space, values) == LocalizedClass::from_rational(1, 1));
    }
}

TEST_CASE("bott residue on smooth projective spaces") {
    std::mt19937_64 rng(59);

    SUBCASE("small chern numbers") {
        for (int trial = 0; trial < 10; ++trial) {
            auto line = testutil::random_rank1_action(rng, 1);
            auto ls = projective_fixed_points(line);
            CHECK(bott_residue(ls, {tangent_bundle(ls)}, ChernPolynomial::chern(0, 1)) == Rational(2));

            auto plane = testutil::random_rank1_action(rng, 2);
            auto ps = projective_fixed_points(plane);
            auto c1 = ChernPolynomial::chern(0, 1);
            CHECK(bott_residue(ps, {tangent_bundle(ps)}, c1 * c1) == Rational(9));
            CHECK(bott_residue(ps, {tangent_bundle(ps)}, ChernPolynomial::chern(0, 2)) == Rational(3));
        }
    }
    SUBCASE("top chern class counts n + 1") {
        for (std::size_t n = 1; n <= 4; ++n) {
            auto action = testutil::random_rank1_action(rng, n);
            auto space = projective_fixed_points(action);
            CHECK(bott_residue(space, {tangent_bundle(space)},
                               ChernPolynomial::chern(0, static_cast<std::uint32_t>(n)))
                  == Rational(static_cast<long>(n) + 1));
        }
    }
    SUBCASE("top chern class of a flag variety counts its fixed points") {
        for (std::size_t n : {2ul, 3ul, 4ul}) {
            auto space = flag_fixed_points(n);
            const auto top = static_cast<std::uint32_t>(space.dim());
            CHECK(bott_residue(space, {tangent_bundle(space)}, ChernPolynomial::chern(0, top))
                  == Rational(static_cast<long>(space.size())));
        }
    }
    SUBCASE("agrees with the ordinary chow oracle on random inputs") {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 1 + trial % 4;
            auto action = testutil::random_rank1_action(rng, n);
            auto space = projective_fixed_points(action);
            std::uniform_int_distribution<std::int64_t> dd(-3, 3);
            const std::int64_t d = dd(rng);
            std::vector<EquivariantBundle> bundles{tangent_bundle(space),
                                                   line_bundle(action, d, chr({dd(rng)}))};
            std::vector<chow::Bundle> oracle_bundles{
                {chow::Bundle::Kind::tangent, 0}, {chow::Bundle::Kind::line, d}};
            auto poly = random_chern_poly(rng, bundles, static_cast<std::uint32_t>(n));
            CHECK(bott_residue(space, bundles, poly) == chow::degree(n, oracle_bundles, poly));
        }
    }
    SUBCASE("thread count never changes the result") {
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t n = 3 + trial % 2;
            auto action = testutil::random_rank1_action(rng, n);
            auto space = projective_fixed_points(action);
            std::vector<EquivariantBundle> bundles{tangent_bundle(space)};
            auto poly = random_chern_poly(rng, bundles, static_cast<std::uint32_t>(n));
            auto serial = bott_residue_detailed(space, bundles, poly);
            auto parallel = bott_residue_detailed(space, bundles, poly, {}, 4);
            CHECK(serial.value == parallel.value);
            REQUIRE(serial.contributions.size() == parallel.contributions.size());
            for (std::size_t p = 0; p < serial.contributions.size(); ++p)
                CHECK(serial.contributions[p].second == parallel.contributions[p].second);
        }
    }
    SUBCASE("weight choice never matters") {
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t n = 2 + trial % 3;
            auto a1 = testutil::random_rank1_action(rng, n);
            auto a2 = testutil::random_rank1_action(rng, n);
            auto s1 = projective_fixed_points(a1);
            auto s2 = projective_fixed_points(a2);
            auto poly = random_chern_poly(rng, {tangent_bundle(s1)}, static_cast<std::uint32_t>(n));
            CHECK(bott_residue(s1, {tangent_bundle(s1)}, poly)
                  == bott_residue(s2, {tangent_bundle(s2)}, poly));
        }
    }
    SUBCASE("degree mismatch is rejected") {
        auto plane = testutil::random_rank1_action(rng, 2);
        auto space = projective_fixed_points(plane);
        CHECK_THROWS_AS(bott_residue(space, {tangent_bundle(space)}, ChernPolynomial::chern(0, 1)),
                        DegreeMismatchError);
    }
    SUBCASE("deficit degrees sum to exactly zero") {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 2 + trial % 3;
            auto action = testutil::random_rank1_action(rng, n);
            auto space = projective_fixed_points(action);
            std::vector<EquivariantBundle> bundles{tangent_bundle(space),
                                                   line_bundle(action, 2, chr({1}))};
            std::uniform_int_distribution<std::uint32_t> degd(1, static_cast<std::uint32_t>(n) - 1);
            auto poly = random_chern_poly(rng, bundles, degd(rng));
            std::vector<MultiPoly> values;
            for (std::size_t p = 0; p < space.size(); ++p)
                values.push_back(eval_chern_polynomial(poly, bundles, p, action.rank));
            CHECK(integrate(space, values).is_zero());
        }
    }
}

TEST_CASE("localization tables of the singular quadric") {
    auto action = testutil::quadric_action();
    const MultiPoly one2 = MultiPoly::constant(2, 1);

    SUBCASE("the quadric class") {
        auto table = localize_class(action, hypersurface_class(action, {{2, chr({0, 0})}}));
        REQUIRE(table.entries.size() == 4);
        // (1/(t^2(a^2-1))) (2 P_s - (a+1) P + (a-1) P')
        CHECK(table.entries[0]
              == LocalizedClass(-one2, std::vector<Character>{chr({1, 0}), chr({-1, 1})}));
        CHECK(table.entries[1]
              == LocalizedClass(one2, std::vector<Character>{chr({1, 0}), chr({1, 1})}));
        CHECK(table.entries[2].is_zero());
        CHECK(table.entries[3]
              == LocalizedClass(one2.scaled(2), std::vector<Character>{chr({-1, 1}), chr({1, 1})}));
    }
    SUBCASE("the line class") {
        auto L = hypersurface_class(action, {{1, chr({-1, 0})}, {1, chr({0, 0})}});
        auto table = localize_class(action, L);
        // (1/(t(a-1))) (-P_s + P)
        CHECK(table.entries[0] == LocalizedClass(one2, std::vector<Character>{chr({-1, 1})}));
        CHECK(table.entries[1].is_zero());
        CHECK(table.entries[2].is_zero());
        CHECK(table.entries[3] == LocalizedClass(-one2, std::vector<Character>{chr({-1, 1})}));
    }
    SUBCASE("point classes localize to delta tables") {
        for (std::size_t i = 0; i < 4; ++i) {
            auto table = localize_class(action, point_class(action, i));
            for (std::size_t p = 0; p < 4; ++p)
                CHECK(table.entries[p] == LocalizedClass::from_rational(2, p == i ? 1 : 0));
        }
    }
}

TEST_CASE("reconstruction diagnostics") {
    auto action = testutil::quadric_action();

    SUBCASE("the quadric table reconstructs") {
        auto alpha = hypersurface_class(action, {{2, chr({0, 0})}});
        auto table = localize_class(action, alpha);
        CHECK(verify_localization(action, alpha, table).pass);
    }
    SUBCASE("random reduced classes reconstruct; perturbed tables fail") {
        std::mt19937_64 rng(61);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 1 + trial % 4;
            auto a = testutil::random_rank1_action(rng, n);
            EquivariantClass alpha(a, testutil::random_poly(rng, 2, 5, 3));
            auto table = localize_class(a, alpha);
            CHECK(verify_localization(a, alpha, table).pass);

            LocalizationTable bad = table;
            bad.entries[trial % (n + 1)] =
                bad.entries[trial % (n + 1)] + LocalizedClass::from_rational(1, 1);
            auto diag = verify_localization(a, alpha, bad);
            CHECK_FALSE(diag.pass);
            CHECK_FALSE(diag.residual.is_zero());
        }
    }
}

TEST_CASE("singular residue computations") {
    SUBCASE("the singular quadric chern number is 24, symbolically") {
        auto action = testutil::quadric_action();
        auto gamma = hypersurface_class(action, {{2, chr({0, 0})}});
        auto Tq = tangent_bundle(projective_fixed_points(action));
        auto Tp2 = tangent_bundle(projective_fixed_points(testutil::plane_action()));
        auto pi_T = pullback_bundle({{0, 0}, {1, 1}, {3, 2}}, Tp2);
        auto alpha = ChernPolynomial::chern(0, 1) * ChernPolynomial::chern(1, 1);

        auto result = singular_chern_number_detailed(action, gamma, {0, 1, 3}, {pi_T, Tq}, alpha, 2);
        CHECK(result.residue.value == Rational(24));

        // Per-point summands match the displayed fractions:
        // 12a^2/(a^2-1), -(a-3)(a-4)(a+1)/(a^2-1), (a+3)(a+4)(a-1)/(a^2-1).
        MultiPoly t1 = MultiPoly::variable(2, 0), t2 = MultiPoly::variable(2, 1);
        REQUIRE(result.residue.contributions.size() == 3);
        CHECK(result.residue.contributions[0].second
              == LocalizedClass(-((t2 - t1.scaled(3)) * (t2 - t1.scaled(4)) * (t2 + t1)),
                                std::vector<Character>{chr({-1, 1}), chr({1, 1}), chr({1, 0})}));
        CHECK(result.residue.contributions[1].second
              == LocalizedClass((t2 + t1.scaled(3)) * (t2 + t1.scaled(4)) * (t2 - t1),
                                std::vector<Character>{chr({-1, 1}), chr({1, 1}), chr({1, 0})}));
        CHECK(result.residue.contributions[2].second
              == LocalizedClass(make_poly(2, {{{0, 2}, 12}}),
                                std::vector<Character>{chr({-1, 1}), chr({1, 1})}));
        // The vanishing check covered the one off-quadric point.
        REQUIRE(result.vanishing_checks.size() == 1);
        CHECK(result.vanishing_checks[0].first == "p2");
        CHECK(result.vanishing_checks[0].second);
    }
    SUBCASE("rank-one integer substitutions all give 24") {
        for (std::int64_t a : {2, 3, 5, -2}) {
            auto action = testutil::quadric_action_rank1(a);
            auto gamma = hypersurface_class(action, {{2, chr({0})}});
            auto Tq = tangent_bundle(projective_fixed_points(action));
            ProjectiveSpaceAction plane(1, {chr({1}), chr({-1}), chr({a})});
            auto Tp2 = tangent_bundle(projective_fixed_points(plane));
            auto pi_T = pullback_bundle({{0, 0}, {1, 1}, {3, 2}}, Tp2);
            auto alpha = ChernPolynomial::chern(0, 1) * ChernPolynomial::chern(1, 1);
            CHECK(singular_chern_number(action, gamma, {0, 1, 3}, {pi_T, Tq}, alpha, 2)
                  == Rational(24));
        }
    }
    SUBCASE("conic in the plane") {
        ProjectiveSpaceAction plane(1, {chr({1}), chr({-1}), chr({0})});
        auto gamma = hypersurface_class(plane, {{2, chr({0})}});
        auto T = tangent_bundle(projective_fixed_points(plane));
        CHECK(singular_chern_number(plane, gamma, {0, 1}, {T}, ChernPolynomial::chern(0, 1), 1)
              == Rational(6));
    }
    SUBCASE("a hyperplane point has degree one") {
        ProjectiveSpaceAction line(1, {chr({2}), chr({5})});
        auto gamma = hypersurface_class(line, {{1, chr({2})}}); // cut of weight a_0, through p_1
        CHECK(singular_chern_number(line, gamma, {1}, {}, ChernPolynomial::one(), 0) == Rational(1));
    }
    SUBCASE("support violations are caught") {
        auto action = testutil::quadric_action();
        auto gamma = hypersurface_class(action, {{2, chr({0, 0})}});
        auto Tq = tangent_bundle(projective_fixed_points(action));
        CHECK_THROWS_AS(
            singular_chern_number(action, gamma, {0, 1}, {Tq}, ChernPolynomial::chern(0, 2), 2),
            VanishingCheckError);
    }
    SUBCASE("fundamental class agrees with the smooth residue formula") {
        std::mt19937_64 rng(67);
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t n = 1 + trial % 3;
            auto action = testutil::random_rank1_action(rng, n);
            auto space = projective_fixed_points(action);
            std::vector<EquivariantBundle> bundles{tangent_bundle(space)};
            auto poly = random_chern_poly(rng, bundles, static_cast<std::uint32_t>(n));
            std::vector<std::size_t> all;
            for (std::size_t p = 0; p <= n; ++p) all.push_back(p);
            CHECK(singular_chern_number(action, EquivariantClass::unit(action), all, bundles, poly, n)
                  == bott_residue(space, bundles, poly));
        }
    }
}

TEST_CASE("basis expansion") {
    auto action = testutil::quadric_action();
    auto fPs = point_class(action, 3);
    auto fL = hypersurface_class(action, {{1, chr({-1, 0})}, {1, chr({0, 0})}});
    auto fI = hypersurface_class(action, {{2, chr({0, 0})}});
    const std::vector<EquivariantClass> basis{fPs, fL, fI};
    const MultiPoly t1 = MultiPoly::variable(2, 0), t2 = MultiPoly::variable(2, 1);

    SUBCASE("the pushforward matrix columns") {
        auto c = expand_in_basis(basis, fPs);
        CHECK(c[0] == LocalizedClass::from_rational(2, 1));
        CHECK(c[1].is_zero());
        CHECK(c[2].is_zero());

        c = expand_in_basis(basis, point_class(action, 0)); // i_*(P) = P_s + (a-1)t L
        CHECK(c[0] == LocalizedClass::from_rational(2, 1));
        CHECK(c[1] == LocalizedClass(t2 - t1));
        CHECK(c[2].is_zero());

        c = expand_in_basis(basis, point_class(action, 1)); // i_*(P') = P_s + (a+1)t L + (a+1)t^2 I
        CHECK(c[0] == LocalizedClass::from_rational(2, 1));
        CHECK(c[1] == LocalizedClass(t2 + t1));
        CHECK(c[2] == LocalizedClass((t2 + t1) * t1));
    }
    SUBCASE("known polynomial coefficients are recovered") {
        std::mt19937_64 rng(71);
        for (int trial = 0; trial < 15; ++trial) {
            // Build a target with known t-polynomial coefficients; expansion is
            // unique by triangularity, so exactly these must come back.
            std::vector<MultiPoly> r;
            MultiPoly target(3);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                r.push_back(testutil::random_poly(rng, 2, 3, 2));
                target += r.back().padded(3) * basis[k].poly();
            }
            auto c = expand_in_basis(basis, EquivariantClass(action, target));
            for (std::size_t k = 0; k < basis.size(); ++k)
                CHECK(c[k] == LocalizedClass(r[k]));
        }
    }
    SUBCASE("non-factorable pivots are refused") {
        // One-element basis whose leading h-coefficient is irreducible.
        MultiPoly pivot = make_poly(3, {{{2, 0, 1}, 1}, {{0, 2, 1}, 1}}); // (t1^2 + t2^2) h
        std::vector<EquivariantClass> bad{EquivariantClass(action, pivot)};
        CHECK_THROWS_AS(expand_in_basis(bad, EquivariantClass(action, pivot)),
                        NonFactorablePivotError);
    }
    SUBCASE("targets outside the span are refused") {
        std::vector<EquivariantClass> small{fI};
        EquivariantClass h2(action, make_poly(3, {{{0, 0, 2}, 1}}));
        CHECK_THROWS_AS(expand_in_basis(small, h2), InconsistentExpansionError);
    }
}
