// Acceptance suite: one pass/fail line per criterion, each with a pinned
// wall-clock budget. Exit status 0 only when every criterion passes.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "boolframes/adjunction.hpp"
#include "boolframes/localization.hpp"
#include "boolframes/observables.hpp"
#include "boolframes/quantum_logic.hpp"
#include "boolframes/tensor.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace boolframes;

namespace {

struct Context {
    CoordinatizationModel model2 = standard_model(2);
    CoordinatizationModel model3 = standard_model(3);
    OrthomodularPoset mo2 = fixtures::mo2();
    OrthomodularPoset pasted12 =
        *paste_boolean_blocks({{{"p", "q", "r"}, {"r", "s", "t"}}}).algebra;
    OrthomodularPoset pasted14 =
        *paste_boolean_blocks({{{"p", "q", "r"}, {"s", "t", "u"}}}).algebra;
    OrthomodularPoset mo3 =
        *paste_boolean_blocks({{{"a1", "a2"}, {"b1", "b2"}, {"c1", "c2"}}}).algebra;
    OrthomodularPoset b1 = as_omp(powerset_algebra({"z1"}));
    OrthomodularPoset b2 = as_omp(powerset_algebra({"z1", "z2"}));
    OrthomodularPoset b3 = as_omp(powerset_algebra({"z1", "z2", "z3"}));

    std::vector<std::pair<std::string, const OrthomodularPoset*>> boolean_suite() const {
        return {{"2^1", &b1}, {"2^2", &b2}, {"2^3", &b3}};
    }
    std::vector<std::pair<std::string, const OrthomodularPoset*>> non_boolean_suite() const {
        return {{"MO2", &mo2}, {"MO3", &mo3}, {"pasted-12", &pasted12}, {"pasted-14", &pasted14}};
    }
};

std::vector<std::vector<int>> normalized(std::vector<std::vector<int>> classes) {
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end());
    return classes;
}

Chart block_chart(const CoordinatizationModel& model, int obj, const OrthomodularPoset& l,
                  const std::vector<std::string>& images) {
    std::vector<int> idx;
    for (const auto& name : images) idx.push_back(*l.index_of(name));
    return Chart{obj, *quantum_hom_from_atom_images(model.algebra(obj), l, idx)};
}

// 1. Every event-algebra law has a fixture mutation killed by the validator
// naming that law: axioms a-e, g plus the partial-order tier.
bool criterion_axiom_kill(const Context& ctx, std::string& detail) {
    const auto& m = ctx.mo2;
    const int n = m.size();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
    std::vector<int> ortho;
    for (int i = 0; i < n; ++i) {
        ortho.push_back(m.ortho(i));
        for (int j = 0; j < n; ++j) leq[i][j] = m.leq(i, j);
    }

    int killed = 0;
    std::vector<std::string> missed;
    auto expect = [&](const std::string& law, const ValidationReport& report, bool exact) {
        bool ok = !report.ok() && (exact ? report.names_only(law) : report.names(law));
        if (ok) {
            ++killed;
        } else {
            missed.push_back(law);
        }
    };

    {  // [a]: strip the bottom element's upper bounds
        auto mutated = leq;
        int zero = *m.index_of("0");
        for (int j = 0; j < n; ++j) mutated[zero][j] = (j == zero);
        expect("axiom[a]",
               validate_event_algebra(OrthomodularPoset(m.labels(), mutated, ortho, m.top())),
               false);
    }
    {  // [b]: 3-cycle in the orthocomplement
        auto mutated = ortho;
        mutated[*m.index_of("a")] = *m.index_of("a*");
        mutated[*m.index_of("a*")] = *m.index_of("b");
        mutated[*m.index_of("b")] = *m.index_of("a");
        mutated[*m.index_of("b*")] = *m.index_of("b*");
        expect("axiom[b]",
               validate_event_algebra(OrthomodularPoset(m.labels(), leq, mutated, m.top())),
               false);
    }
    expect("axiom[c]", validate_event_algebra(fixtures::pinched_complement()), true);
    {  // [d]: exchange the orthos of 0 and the second atom of 2^2
        auto b = as_omp(powerset_algebra({"x", "y"}));
        std::vector<std::vector<bool>> square(4, std::vector<bool>(4));
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) square[i][j] = b.leq(i, j);
        }
        expect("axiom[d]",
               validate_event_algebra(OrthomodularPoset(b.labels(), square, {2, 3, 0, 1}, 3)),
               false);
    }
    expect("axiom[e]", validate_event_algebra(fixtures::twin_peaks()), true);
    expect("axiom[g]", validate_event_algebra(fixtures::hexagon()), true);
    {  // order: break reflexivity
        auto mutated = leq;
        int a = *m.index_of("a");
        mutated[a][a] = false;
        expect("order",
               validate_event_algebra(OrthomodularPoset(m.labels(), mutated, ortho, m.top())),
               true);
    }

    std::ostringstream os;
    os << killed << "/7 killed";
    for (const auto& miss : missed) os << ", missed " << miss;
    detail = os.str();
    return killed == 7;
}

// 2. For every object of the generated model base, y[obj] (x) A has exactly
// |A(obj)| classes and the canonical map is a bijection.
bool criterion_unit_iso(const Context& ctx, std::string& detail) {
    int checked = 0;
    for (int o = 0; o < ctx.model3.base().object_count(); ++o) {
        auto unit = unit_representable_iso(o, ctx.model3);
        if (!unit.bijective ||
            unit.class_count != static_cast<int>(ctx.model3.algebra(o).element_count())) {
            detail = "failed at " + ctx.model3.base().object_name(o);
            return false;
        }
        ++checked;
    }
    detail = std::to_string(checked) + " objects, canonical maps bijective";
    return true;
}

// 3. Nat(X, R(L)) matches the structure-respecting maps X (x) A -> L, with
// mutually inverse adjunction operators, over randomized small presheaves.
bool criterion_adjunction(const Context& ctx, std::string& detail) {
    auto presheaves = generators::random_small_presheaves(ctx.model3.base(), 20, 20260810);
    std::vector<std::pair<std::string, const OrthomodularPoset*>> targets = {
        {"2^2", &ctx.b2},
        {"MO2", &ctx.mo2},
        {"pasted-12", &ctx.pasted12},
        {"pasted-14", &ctx.pasted14}};
    int instances = 0;
    for (const auto& x : presheaves) {
        for (const auto& [name, l] : targets) {
            auto report = adjunction_bijection(x, ctx.model3, *l);
            if (!report.ok()) {
                detail = "failed for L = " + name + " on presheaf #" +
                         std::to_string(instances / targets.size()) +
                         " (|Nat| = " + std::to_string(report.nat_count) +
                         ", hom side = " + std::to_string(report.hom_count) + ")";
                return false;
            }
            ++instances;
        }
    }
    detail = std::to_string(instances) + " instances, counts equal and operators inverse";
    return true;
}

// 4. Maximal systems are localizations for every algebra in the suite; the
// generated MO2 two-block system has exactly 6 classes and full structure.
bool criterion_counit_forward(const Context& ctx, std::string& detail) {
    std::vector<std::pair<std::string, const OrthomodularPoset*>> suite = ctx.boolean_suite();
    for (const auto& entry : ctx.non_boolean_suite()) suite.push_back(entry);
    for (const auto& [name, l] : suite) {
        auto report = localization_verdict(maximal_system(ctx.model3, *l));
        if (!report.is_localization) {
            detail = "maximal system over " + name + " is not a localization";
            return false;
        }
    }
    int b2_obj = *ctx.model2.base().object_index("B2");
    auto two_block = generate_system({block_chart(ctx.model2, b2_obj, ctx.mo2, {"a", "a*"}),
                                      block_chart(ctx.model2, b2_obj, ctx.mo2, {"b", "b*"})},
                                     ctx.model2, ctx.mo2);
    auto report = localization_verdict(two_block);
    if (report.class_count != 6 || !report.is_localization) {
        detail = "two-block MO2 system: " + std::to_string(report.class_count) + " classes";
        return false;
    }
    detail = std::to_string(ctx.boolean_suite().size() + ctx.non_boolean_suite().size()) +
             " maximal systems plus the 6-class MO2 atlas";
    return true;
}

// 5. Failure modes: a single MO2 block misses covering; two isolated seeds
// produce duplicate classes over the same event.
bool criterion_counit_failures(const Context& ctx, std::string& detail) {
    int b2_obj = *ctx.model2.base().object_index("B2");
    auto single = generate_system({block_chart(ctx.model2, b2_obj, ctx.mo2, {"a", "a*"})},
                                  ctx.model2, ctx.mo2);
    auto single_report = localization_verdict(single);
    if (single_report.covering || single_report.is_localization) {
        detail = "single-block system unexpectedly covers MO2";
        return false;
    }

    auto alg = powerset_algebra({"x", "y"});
    CoordinatizationModel isolated(FiniteCategory({"B"}, {{"id", 0, 0}}, {0}, {{0}}), {alg},
                                   {identity_boolean_hom(alg)});
    auto broken = generate_system(
        {Chart{0, *quantum_hom_from_atom_images(
                      alg, ctx.mo2, {*ctx.mo2.index_of("a"), *ctx.mo2.index_of("a*")})},
         Chart{0, *quantum_hom_from_atom_images(
                      alg, ctx.mo2, {*ctx.mo2.index_of("b"), *ctx.mo2.index_of("b*")})}},
        isolated, ctx.mo2);
    auto broken_report = localization_verdict(broken);
    if (broken_report.injective || broken_report.is_localization || !broken_report.covering) {
        detail = "isolated two-seed system did not break injectivity alone";
        return false;
    }
    detail = "covering fails for the single block; injectivity fails for the isolated seeds";
    return true;
}

// 6. Pasting cocycle conditions hold on the passing systems; a mutated
// transition triple is caught with a witness.
bool criterion_cocycle(const Context& ctx, std::string& detail) {
    int b2_obj = *ctx.model2.base().object_index("B2");
    std::vector<std::pair<std::string, PrelocSystem>> systems;
    systems.emplace_back("MO2 two-block",
                         generate_system({block_chart(ctx.model2, b2_obj, ctx.mo2, {"a", "a*"}),
                                          block_chart(ctx.model2, b2_obj, ctx.mo2, {"b", "b*"})},
                                         ctx.model2, ctx.mo2));
    systems.emplace_back("maximal 2^2", maximal_system(ctx.model2, ctx.b2));
    systems.emplace_back("maximal MO2", maximal_system(ctx.model2, ctx.mo2));
    systems.emplace_back("maximal pasted-12", maximal_system(ctx.model3, ctx.pasted12));
    int checked = 0;
    for (const auto& [name, system] : systems) {
        auto report = cocycle_check(system);
        if (!report.ok) {
            detail = "cocycle fails on the " + name + " system: " + report.failures.front();
            return false;
        }
        checked += report.pairs_checked + report.triples_checked;
    }

    int b3_obj = *ctx.model3.base().object_index("B3");
    auto left = block_chart(ctx.model3, b3_obj, ctx.pasted12, {"p", "q", "r"});
    auto right = block_chart(ctx.model3, b3_obj, ctx.pasted12, {"r", "s", "t"});
    auto ll = pasting_map(left, left);
    auto lr = pasting_map(left, right);
    auto rl = pasting_map(right, left);
    auto broken = ll;
    std::size_t at_r = 0, at_rc = 0;
    for (std::size_t i = 0; i < broken.assignment.size(); ++i) {
        int img = left.hom.apply(static_cast<int>(broken.assignment[i].first));
        if (img == *ctx.pasted12.index_of("r")) at_r = i;
        if (img == ctx.pasted12.ortho(*ctx.pasted12.index_of("r"))) at_rc = i;
    }
    std::swap(broken.assignment[at_r].second, broken.assignment[at_rc].second);
    if (check_transition_triple(lr, rl, ll).has_value() ||
        !check_transition_triple(lr, rl, broken).has_value()) {
        detail = "mutated transition triple was not caught";
        return false;
    }
    detail = std::to_string(checked) + " pair/triple checks pass; the mutation is caught";
    return true;
}

// 7. Single-frame obstruction separates Boolean from non-Boolean targets,
// exhaustively over all model-object charts.
bool criterion_obstruction(const Context& ctx, std::string& detail) {
    for (const auto& [name, l] : ctx.non_boolean_suite()) {
        if (!single_frame_obstruction(*l, ctx.model3).obstructed) {
            detail = name + " was not obstructed";
            return false;
        }
    }
    for (const auto& [name, l] : ctx.boolean_suite()) {
        auto report = single_frame_obstruction(*l, ctx.model3);
        if (report.obstructed || !report.surjective_chart) {
            detail = name + " was obstructed";
            return false;
        }
        std::vector<bool> hit(l->size(), false);
        for (int x : report.surjective_chart->hom.map) hit[x] = true;
        if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
            detail = "exhibited chart for " + name + " is not surjective";
            return false;
        }
    }
    detail = "obstructed on all non-Boolean targets, charts exhibited on Boolean ones";
    return true;
}

// 8. The union-find tensor quotient equals the naive fixed-point closure on
// every test instance, compared as partitions.
bool criterion_quotient_oracle(const Context& ctx, std::string& detail) {
    int instances = 0;
    for (const auto& x : generators::random_small_presheaves(ctx.model2.base(), 12, 4711)) {
        if (normalized(tensor_product(x, ctx.model2).partition()) !=
            normalized(oracles::naive_tensor_partition(x, ctx.model2))) {
            detail = "mismatch over the two-object base";
            return false;
        }
        ++instances;
    }
    for (const auto& x : generators::random_small_presheaves(ctx.model3.base(), 8, 1105)) {
        if (normalized(tensor_product(x, ctx.model3).partition()) !=
            normalized(oracles::naive_tensor_partition(x, ctx.model3))) {
            detail = "mismatch over the three-object base";
            return false;
        }
        ++instances;
    }
    for (int o = 0; o < ctx.model3.base().object_count(); ++o) {
        auto y = representable(ctx.model3.base(), o);
        if (normalized(tensor_product(y, ctx.model3).partition()) !=
            normalized(oracles::naive_tensor_partition(y, ctx.model3))) {
            detail = "mismatch on a representable";
            return false;
        }
        ++instances;
    }
    detail = std::to_string(instances) + " instances agree";
    return true;
}

// 9. Right-action laws, exhaustively over the composable fixtures.
bool criterion_right_action(const Context& ctx, std::string& detail) {
    auto partition_of = [](std::initializer_list<const char*> bps) {
        std::vector<Rational> r;
        for (const char* b : bps) r.push_back(parse_rational(b));
        return PartitionAlgebra(std::move(r));
    };
    auto all_functions = [](const PartitionAlgebra& src, const PartitionAlgebra& tgt) {
        std::vector<CellFunction> out;
        std::vector<int> to(static_cast<std::size_t>(src.cell_count()), 0);
        for (;;) {
            std::vector<std::vector<int>> pre(static_cast<std::size_t>(tgt.cell_count()));
            for (int s = 0; s < src.cell_count(); ++s) pre[to[s]].push_back(s);
            out.push_back(CellFunction{src, tgt, pre});
            int pos = src.cell_count() - 1;
            while (pos >= 0 && to[pos] == tgt.cell_count() - 1) {
                to[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++to[pos];
        }
        return out;
    };

    auto p3 = partition_of({"0", "1"});
    auto p2 = partition_of({"0"});
    auto p1 = partition_of({});
    std::vector<Observable> observables = {
        Observable{p3, ctx.mo2,
                   {*ctx.mo2.index_of("a"), *ctx.mo2.index_of("a*"), *ctx.mo2.index_of("0")}},
        Observable{p3, ctx.pasted12,
                   {*ctx.pasted12.index_of("p"), *ctx.pasted12.index_of("q"),
                    *ctx.pasted12.index_of("r")}}};

    int laws = 0;
    for (const auto& obs : observables) {
        if (!(act_borel_function(obs, identity_cell_function(p3)) == obs)) {
            detail = "identity action failed";
            return false;
        }
        ++laws;
        for (const auto& f : all_functions(p3, p2)) {
            for (const auto& second : {all_functions(p2, p2), all_functions(p2, p1)}) {
                for (const auto& g : second) {
                    auto lhs = act_borel_function(act_borel_function(obs, f), g);
                    auto rhs = act_borel_function(obs, compose_cell_functions(f, g));
                    if (!(lhs == rhs)) {
                        detail = "action law failed on a composable pair";
                        return false;
                    }
                    ++laws;
                }
            }
        }
    }
    detail = std::to_string(laws) + " law instances hold exactly";
    return true;
}

// 10. The subspace construction for two plane bases agrees with the
// two-block pasting, by exhaustive isomorphism search.
bool criterion_cross_constructor(const Context& ctx, std::string& detail) {
    auto planes = subspace_event_algebra({{1, 0}, {1, 1}}, 2);
    auto pasted = *paste_boolean_blocks({{{"a1", "a2"}, {"b1", "b2"}}}).algebra;
    if (!find_omp_isomorphism(planes, pasted)) {
        detail = "plane subspaces are not isomorphic to the two-block pasting";
        return false;
    }
    auto dim3 = subspace_event_algebra({{1, 0, 0}, {0, 1, 0}, {0, 1, 1}}, 3);
    if (!find_omp_isomorphism(dim3, ctx.pasted12)) {
        detail = "the 12-element subspace algebra does not match the shared-atom pasting";
        return false;
    }
    detail = "both subspace algebras match their pastings";
    return true;
}

}  // namespace

int main() {
    Context ctx;
    struct Criterion {
        int number;
        std::string name;
        double budget_seconds;
        std::function<bool(const Context&, std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "axiom mutation kill rate", 1.0, criterion_axiom_kill},
        {2, "representable-unit isomorphism", 10.0, criterion_unit_iso},
        {3, "adjunction bijection", 60.0, criterion_adjunction},
        {4, "counit theorem, forward direction", 10.0, criterion_counit_forward},
        {5, "counit theorem, failure modes", 5.0, criterion_counit_failures},
        {6, "pasting cocycle conditions", 5.0, criterion_cocycle},
        {7, "single-frame obstruction", 30.0, criterion_obstruction},
        {8, "tensor quotient oracle equivalence", 10.0, criterion_quotient_oracle},
        {9, "right-action laws", 1.0, criterion_right_action},
        {10, "cross-constructor agreement", 5.0, criterion_cross_constructor},
    };

    bool all_pass = true;
    for (const auto& criterion : criteria) {
        std::string detail;
        auto start = std::chrono::steady_clock::now();
        bool pass = false;
        try {
            pass = criterion.run(ctx, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > criterion.budget_seconds) {
            pass = false;
            detail += " [over budget]";
        }
        all_pass &= pass;
        std::cout << (pass ? "[PASS] " : "[FAIL] ") << std::setw(2) << criterion.number << ". "
                  << criterion.name << ": " << detail << " (" << std::fixed
                  << std::setprecision(3) << seconds << " s, budget " << std::setprecision(0)
                  << criterion.budget_seconds << " s)\n";
    }
    return all_pass ? 0 : 1;
}
