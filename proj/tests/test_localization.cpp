#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "boolframes/localization.hpp"
#include "fixtures.hpp"

using namespace boolframes;

namespace {

Chart block_chart(const CoordinatizationModel& model, int obj, const OrthomodularPoset& l,
                  const std::vector<std::string>& images) {
    std::vector<int> idx;
    for (const auto& name : images) idx.push_back(*l.index_of(name));
    auto h = quantum_hom_from_atom_images(model.algebra(obj), l, idx);
    REQUIRE(h.has_value());
    return Chart{obj, *h};
}

// Model with a single object carrying 2^2 and only the identity arrow, so
// charts cannot communicate through coarser frames.
CoordinatizationModel isolated_square_model() {
    auto alg = powerset_algebra({"x", "y"});
    return CoordinatizationModel(FiniteCategory({"B"}, {{"id", 0, 0}}, {0}, {{0}}), {alg},
                                 {identity_boolean_hom(alg)});
}

}  // namespace

TEST_CASE("generate_system") {
    auto model = standard_model(2);
    auto mo2 = fixtures::mo2();
    int b1 = *model.base().object_index("B1");
    int b2 = *model.base().object_index("B2");

    SECTION("the empty seed family generates the empty system") {
        auto s = generate_system({}, model, mo2);
        CHECK(s.chart_count() == 0);
        CHECK(s.validate().ok());
    }
    SECTION("seeding with all of R(L) reproduces the maximal system") {
        auto max = maximal_system(model, mo2);
        std::vector<Chart> seeds;
        for (int o = 0; o < model.base().object_count(); ++o) {
            for (std::size_t i = 0; i < max.members()[o].size(); ++i) {
                seeds.push_back(max.chart(o, static_cast<int>(i)));
            }
        }
        auto s = generate_system(seeds, model, mo2);
        CHECK(s.members() == max.members());
    }
    SECTION("two block inclusions close to the full system over this base") {
        auto s = generate_system({block_chart(model, b2, mo2, {"a", "a*"}),
                                  block_chart(model, b2, mo2, {"b", "b*"})},
                                 model, mo2);
        CHECK(s.members()[b1].size() == 1);  // the unique 2^1 chart, by precomposition
        CHECK(s.members()[b2].size() == 6);
        CHECK(s.validate().ok());
        CHECK(validate_presheaf(s.as_presheaf()).ok());
    }
    SECTION("a single block inclusion closes to four charts at B2") {
        auto s = generate_system({block_chart(model, b2, mo2, {"a", "a*"})}, model, mo2);
        CHECK(s.members()[b2].size() == 4);  // (a,a*), (a*,a), (0,1), (1,0)
        CHECK(s.members()[b1].size() == 1);
    }
    SECTION("invalid seed charts are rejected with the violated condition") {
        std::vector<int> map(4, mo2.top());
        CHECK_THROWS_WITH(
            generate_system({Chart{b2, QuantumHom{model.omp(b2), mo2, map}}}, model, mo2),
            Catch::Matchers::ContainsSubstring("hom["));
    }
    SECTION("intersection of systems is a system") {
        auto s1 = generate_system({block_chart(model, b2, mo2, {"a", "a*"})}, model, mo2);
        auto s2 = generate_system({block_chart(model, b2, mo2, {"b", "b*"})}, model, mo2);
        auto both = intersect_systems(s1, s2);
        CHECK(both.validate().ok());
        CHECK(both.members()[b2].size() == 2);  // the collapses (0,1), (1,0)
        auto with_max = intersect_systems(s1, maximal_system(model, mo2));
        CHECK(with_max.members() == s1.members());
    }
}

TEST_CASE("fibre products") {
    auto model = standard_model(2);
    auto mo2 = fixtures::mo2();
    int b2 = *model.base().object_index("B2");
    auto phi = block_chart(model, b2, mo2, {"a", "a*"});
    auto psi = block_chart(model, b2, mo2, {"b", "b*"});

    SECTION("pullback along equal charts contains the diagonal") {
        auto fp = fibre_product(phi, phi);
        for (Mask m = 0; m < 4; ++m) {
            CHECK(std::find(fp.pairs.begin(), fp.pairs.end(), std::pair{m, m}) != fp.pairs.end());
        }
        CHECK(fp.pairs.size() == 4);  // phi is injective, so only the diagonal
    }
    SECTION("two MO2 blocks agree exactly on 0 and 1") {
        auto fp = fibre_product(phi, psi);
        std::vector<std::pair<Mask, Mask>> expected = {{0, 0}, {3, 3}};
        CHECK(fp.pairs == expected);
    }
    SECTION("chart against its own precomposite realizes the graph of A(v)") {
        int arrow = -1;
        const auto& c = model.base();
        for (int u = 0; u < c.arrow_count(); ++u) {
            if (c.arrow(u).source == *c.object_index("B1") && c.arrow(u).target == b2) arrow = u;
        }
        REQUIRE(arrow >= 0);
        auto av = model.quantum_hom(arrow);
        Chart pre{*c.object_index("B1"), compose_quantum_homs(phi.hom, av)};
        auto fp = fibre_product(phi, pre);
        std::vector<std::pair<Mask, Mask>> expected;
        for (Mask b = 0; b < 2; ++b) expected.push_back({static_cast<Mask>(av.apply(b)), b});
        std::sort(expected.begin(), expected.end());
        CHECK(fp.pairs == expected);
    }
    SECTION("universal property by exhaustion over small cones") {
        auto fp = fibre_product(phi, psi);
        for (int t_size = 1; t_size <= 2; ++t_size) {
            std::vector<Mask> h(t_size, 0), g(t_size, 0);
            auto advance = [&](std::vector<Mask>& v, Mask limit) {
                for (auto& x : v) {
                    if (++x < limit) return true;
                    x = 0;
                }
                return false;
            };
            do {
                do {
                    bool commutes = true;
                    for (int i = 0; i < t_size; ++i) {
                        commutes &= phi.hom.apply(static_cast<int>(h[i])) ==
                                    psi.hom.apply(static_cast<int>(g[i]));
                    }
                    if (!commutes) continue;
                    // exactly one factorization through the pair set
                    for (int i = 0; i < t_size; ++i) {
                        int count = 0;
                        for (const auto& pr : fp.pairs) {
                            if (pr.first == h[i] && pr.second == g[i]) ++count;
                        }
                        CHECK(count == 1);
                    }
                } while (advance(g, 4));
            } while (advance(h, 4));
        }
    }
}

TEST_CASE("pasting maps") {
    auto model = standard_model(2);
    auto mo2 = fixtures::mo2();
    int b2 = *model.base().object_index("B2");
    auto phi = block_chart(model, b2, mo2, {"a", "a*"});
    auto psi = block_chart(model, b2, mo2, {"b", "b*"});

    SECTION("self-pasting is the identity on the chart image") {
        auto omega = pasting_map(phi, phi);
        REQUIRE(omega.applicable);
        for (const auto& [b, a] : omega.assignment) CHECK(a == b);
    }
    SECTION("MO2 blocks paste exactly on 0 and 1") {
        auto omega = pasting_map(phi, psi);
        REQUIRE(omega.applicable);
        std::vector<std::pair<Mask, Mask>> expected = {{0, 0}, {3, 3}};
        CHECK(omega.assignment == expected);
    }
    SECTION("non-injective charts make the pasting undefined") {
        auto degenerate = block_chart(model, b2, mo2, {"0", "1"});
        auto omega = pasting_map(degenerate, phi);
        CHECK_FALSE(omega.applicable);
        CHECK_THAT(omega.reason, Catch::Matchers::ContainsSubstring("pasting undefined"));
    }
    SECTION("blocks sharing an atom paste along the shared part") {
        auto out = paste_boolean_blocks({{{"p", "q", "r"}, {"r", "s", "t"}}});
        REQUIRE(out.algebra.has_value());
        const auto& l = *out.algebra;
        auto model3 = standard_model(3);
        int b3 = *model3.base().object_index("B3");
        auto left = block_chart(model3, b3, l, {"p", "q", "r"});
        auto right = block_chart(model3, b3, l, {"r", "s", "t"});
        auto omega = pasting_map(left, right);
        REQUIRE(omega.applicable);
        // overlap is the 4-element common subalgebra {0, r, r*, 1}
        CHECK(omega.assignment.size() == 4);
        Mask r_left = 0, r_right = 0;
        for (Mask m = 0; m < 8; ++m) {
            if (left.hom.apply(static_cast<int>(m)) == *l.index_of("r")) r_left = m;
            if (right.hom.apply(static_cast<int>(m)) == *l.index_of("r")) r_right = m;
        }
        auto mapped = omega.apply(r_right);
        REQUIRE(mapped.has_value());
        CHECK(*mapped == r_left);
    }
}

TEST_CASE("cocycle conditions") {
    auto model = standard_model(2);
    auto mo2 = fixtures::mo2();
    int b2 = *model.base().object_index("B2");

    SECTION("a single-chart system passes trivially") {
        auto s = generate_system({block_chart(model, b2, mo2, {"a", "a*"})}, model, mo2);
        CHECK(cocycle_check(s).ok);
    }
    SECTION("the two-block MO2 system passes") {
        auto s = generate_system({block_chart(model, b2, mo2, {"a", "a*"}),
                                  block_chart(model, b2, mo2, {"b", "b*"})},
                                 model, mo2);
        auto report = cocycle_check(s);
        CHECK(report.ok);
        CHECK(report.pairs_checked > 0);
        CHECK(report.skipped > 0);  // the collapse charts are not injective
    }
    SECTION("a hand-mutated transition triple fails with a witness") {
        auto out = paste_boolean_blocks({{{"p", "q", "r"}, {"r", "s", "t"}}});
        REQUIRE(out.algebra.has_value());
        const auto& l = *out.algebra;
        auto model3 = standard_model(3);
        int b3 = *model3.base().object_index("B3");
        auto left = block_chart(model3, b3, l, {"p", "q", "r"});
        auto right = block_chart(model3, b3, l, {"r", "s", "t"});
        auto ll = pasting_map(left, left);
        auto lr = pasting_map(left, right);
        auto rl = pasting_map(right, left);
        CHECK_FALSE(check_transition_triple(lr, rl, ll).has_value());
        // cross the direct map on the shared atom and its complement: the
        // composite route still matches them identically, so the triple fails
        auto broken = ll;
        std::size_t at_r = 0, at_rc = 0;
        for (std::size_t i = 0; i < broken.assignment.size(); ++i) {
            if (left.hom.apply(static_cast<int>(broken.assignment[i].first)) == *l.index_of("r")) {
                at_r = i;
            }
            if (left.hom.apply(static_cast<int>(broken.assignment[i].first)) ==
                l.ortho(*l.index_of("r"))) {
                at_rc = i;
            }
        }
        std::swap(broken.assignment[at_r].second, broken.assignment[at_rc].second);
        CHECK(check_transition_triple(lr, rl, broken).has_value());
    }
}

TEST_CASE("counit and localization verdict") {
    auto model = standard_model(2);
    auto mo2 = fixtures::mo2();
    int b2 = *model.base().object_index("B2");

    SECTION("identity atlas on a Boolean algebra") {
        auto l = model.omp(b2);
        auto s = generate_system({Chart{b2, identity_quantum_hom(l)}}, model, l);
        auto report = localization_verdict(s);
        CHECK(report.class_count == 4);
        CHECK(report.covering);
        CHECK(report.injective);
        CHECK(report.preserves_top);
        CHECK(report.preserves_ortho);
        CHECK(report.preserves_order);
        CHECK(report.is_localization);
    }
    SECTION("the two-block system is a localization of MO2") {
        auto s = generate_system({block_chart(model, b2, mo2, {"a", "a*"}),
                                  block_chart(model, b2, mo2, {"b", "b*"})},
                                 model, mo2);
        auto report = localization_verdict(s);
        CHECK(report.class_count == 6);
        CHECK(report.is_localization);
        CHECK(report.preserves_ortho_join);
        CHECK(report.witnesses.empty());
    }
    SECTION("a single block fails to cover MO2") {
        auto s = generate_system({block_chart(model, b2, mo2, {"a", "a*"})}, model, mo2);
        auto report = localization_verdict(s);
        CHECK(report.class_count == 4);
        CHECK_FALSE(report.covering);
        CHECK(report.injective);
        CHECK_FALSE(report.is_localization);
        bool names_b = false;
        for (const auto& w : report.witnesses) {
            names_b |= w.find("uncovered: b") != std::string::npos;
        }
        CHECK(names_b);
    }
    SECTION("broken compatibility: duplicate classes over the same event") {
        auto isolated = isolated_square_model();
        auto alg = isolated.algebra(0);
        auto a_chart =
            quantum_hom_from_atom_images(alg, mo2, {*mo2.index_of("a"), *mo2.index_of("a*")});
        auto b_chart =
            quantum_hom_from_atom_images(alg, mo2, {*mo2.index_of("b"), *mo2.index_of("b*")});
        REQUIRE(a_chart.has_value());
        REQUIRE(b_chart.has_value());
        auto s = generate_system({Chart{0, *a_chart}, Chart{0, *b_chart}}, isolated, mo2);
        auto report = localization_verdict(s);
        CHECK(report.covering);
        CHECK_FALSE(report.injective);
        CHECK_FALSE(report.is_localization);
    }
    SECTION("the empty system localizes nothing") {
        auto s = generate_system({}, model, mo2);
        auto report = localization_verdict(s);
        CHECK(report.class_count == 0);
        CHECK_FALSE(report.covering);
        CHECK_FALSE(report.is_localization);
    }
    SECTION("maximal systems are localizations") {
        std::vector<OrthomodularPoset> targets = {model.omp(b2), mo2};
        for (const auto& l : targets) {
            auto report = localization_verdict(maximal_system(model, l));
            CHECK(report.is_localization);
        }
    }
}

TEST_CASE("single-frame obstruction") {
    auto model = standard_model(3);

    SECTION("Boolean targets admit a surjective chart") {
        for (int atoms = 1; atoms <= 3; ++atoms) {
            std::vector<std::string> names;
            for (int i = 0; i < atoms; ++i) names.push_back("z" + std::to_string(i));
            auto report = single_frame_obstruction(as_omp(powerset_algebra(names)), model);
            CHECK_FALSE(report.obstructed);
            REQUIRE(report.surjective_chart.has_value());
            std::vector<bool> hit(std::size_t{1} << atoms, false);
            for (int x : report.surjective_chart->hom.map) hit[x] = true;
            CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
        }
    }
    SECTION("MO2 is obstructed") {
        CHECK(single_frame_obstruction(fixtures::mo2(), model).obstructed);
    }
    SECTION("the shared-atom pasting is obstructed") {
        auto out = paste_boolean_blocks({{{"p", "q", "r"}, {"r", "s", "t"}}});
        REQUIRE(out.algebra.has_value());
        CHECK(single_frame_obstruction(*out.algebra, model).obstructed);
    }
}
