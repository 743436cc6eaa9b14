#include <catch2/catch_amalgamated.hpp>

#include "boolframes/adjunction.hpp"
#include "boolframes/tensor.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace boolframes;

namespace {

// Normalized partition for comparing quotients across implementations.
std::vector<std::vector<int>> normalized(std::vector<std::vector<int>> classes) {
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end());
    return classes;
}

CoordinatizationModel one_object_model() {
    auto alg = powerset_algebra({"x", "y"});
    return CoordinatizationModel(FiniteCategory({"B"}, {{"id", 0, 0}}, {0}, {{0}}), {alg},
                                 {identity_boolean_hom(alg)});
}

}  // namespace

TEST_CASE("tensor product over an identity-only base has no identifications") {
    auto a = one_object_model();
    std::vector<std::vector<std::string>> labels = {{"p", "q"}};
    std::vector<std::vector<int>> restriction = {{0, 1}};
    auto x = SetPresheaf(a.base(), labels, restriction);
    auto t = tensor_product(x, a);
    CHECK(t.class_count() == 8);  // two points, four algebra elements each
}

TEST_CASE("representable tensor collapses onto the algebra") {
    for (int atoms = 1; atoms <= 3; ++atoms) {
        auto model = standard_model(atoms);
        for (int o = 0; o < model.base().object_count(); ++o) {
            auto y = representable(model.base(), o);
            auto t = tensor_product(y, model);
            CHECK(t.class_count() == static_cast<int>(model.algebra(o).element_count()));
            auto unit = unit_representable_iso(o, model);
            CHECK(unit.bijective);
        }
    }
}

TEST_CASE("union-find quotient equals the naive closure oracle") {
    auto m2 = standard_model(2);
    auto batch = generators::random_small_presheaves(m2.base(), 12, 11);
    for (const auto& x : batch) {
        auto t = tensor_product(x, m2);
        CHECK(normalized(t.partition()) == normalized(oracles::naive_tensor_partition(x, m2)));
    }
    auto m3 = standard_model(3);
    auto y = representable(m3.base(), 2);
    CHECK(normalized(tensor_product(y, m3).partition()) ==
          normalized(oracles::naive_tensor_partition(y, m3)));
}

TEST_CASE("tensor size bound") {
    auto m3 = standard_model(3);
    auto big = generators::coproduct_presheaf(representable(m3.base(), 2),
                                              representable(m3.base(), 2));
    for (int i = 0; i < 5; ++i) {
        big = generators::coproduct_presheaf(big, big);
    }
    CHECK_THROWS_AS(tensor_product(big, m3), BoundExceeded);
}

TEST_CASE("adjunction bijection") {
    auto m2 = standard_model(2);
    auto mo2 = fixtures::mo2();

    SECTION("empty presheaf: both sides are singletons") {
        auto report = adjunction_bijection(empty_presheaf(m2.base()), m2, mo2);
        CHECK(report.nat_count == 1);
        CHECK(report.hom_count == 1);
        CHECK(report.ok());
    }
    SECTION("representables reduce to Hom(A(obj), L) by Yoneda") {
        auto r = hom_presheaf(m2, mo2);
        for (int o = 0; o < m2.base().object_count(); ++o) {
            auto report = adjunction_bijection(representable(m2.base(), o), m2, mo2);
            CHECK(report.nat_count == r.charts[o].size());
            CHECK(report.ok());
        }
    }
    SECTION("terminal presheaf") {
        auto report = adjunction_bijection(terminal_presheaf(m2.base()), m2, mo2);
        CHECK(report.ok());
    }
    SECTION("a quotient of a two-summand coproduct") {
        auto x = generators::coproduct_presheaf(representable(m2.base(), 1),
                                                representable(m2.base(), 0));
        auto q = generators::quotient_presheaf(x, {{0, 0, 1}});
        auto report = adjunction_bijection(q, m2, mo2);
        CHECK(report.counts_equal);
        CHECK(report.mutually_inverse);
    }
    SECTION("Boolean target") {
        auto two2 = as_omp(powerset_algebra({"u", "v"}));
        auto report =
            adjunction_bijection(representable(m2.base(), 1), m2, two2);
        CHECK(report.ok());
    }
}
