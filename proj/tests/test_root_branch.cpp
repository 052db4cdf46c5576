// Nested-radical root branches: evaluation, domains, ordering, the closed
// form at t = 2, suffix zeros, and branching points.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qel/quad.hpp"
#include "qel/root_branch.hpp"
#include "qel/signature.hpp"

using namespace qel;

namespace {

// All signatures of the given rank, in counting order with '+' for 0 bits.
std::vector<Signature> all_signatures(int rank) {
    std::vector<Signature> out;
    out.reserve(1u << rank);
    for (unsigned long mask = 0; mask < (1ul << rank); ++mask) {
        std::string text;
        for (int i = 0; i < rank; ++i) text.push_back((mask >> i) & 1ul ? '-' : '+');
        out.emplace_back(text);
    }
    return out;
}

Signature random_signature(std::mt19937& rng, int max_rank) {
    const int rank = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_rank));
    std::string text;
    for (int i = 0; i < rank; ++i) text.push_back(rng() & 1u ? '-' : '+');
    return Signature(text);
}

}  // namespace

TEST_CASE("signature parsing and accessors") {
    const Signature s("+-+");
    CHECK(s.rank() == 3);
    CHECK(s.sign(0) == 1);
    CHECK(s.sign(1) == -1);
    CHECK(s.sign(2) == 1);
    CHECK(s.str() == "+-+");
    CHECK(s.suffix(1).str() == "-+");
    CHECK(s.suffix(2).str() == "+");
    CHECK(Signature(std::vector<int>{1, -1}) == Signature("+-"));

    CHECK_THROWS_AS(Signature(""), std::invalid_argument);
    CHECK_THROWS_AS(Signature("+x"), std::invalid_argument);
    CHECK_THROWS_AS(Signature(std::vector<int>{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(s.suffix(3), std::out_of_range);
}

TEST_CASE("signed lexicographic comparison") {
    CHECK(compare_signatures(Signature("+"), Signature("-")) == Ordering::above);
    CHECK(compare_signatures(Signature("+-"), Signature("++")) == Ordering::below);
    CHECK(compare_signatures(Signature("++"), Signature("+")) == Ordering::above);
    CHECK(compare_signatures(Signature("+"), Signature("++")) == Ordering::below);
    CHECK(compare_signatures(Signature("-"), Signature("-+")) == Ordering::above);
    CHECK_THROWS_AS(compare_signatures(Signature("+-"), Signature("+-")),
                    std::invalid_argument);
}

TEST_CASE("branch evaluation at the documented points") {
    const BranchEval plus1 = eval_branch(Signature("+"), QuadParam(1.0));
    CHECK(plus1.defined);
    CHECK(plus1.regular);
    CHECK(plus1.value == Catch::Approx(1.0).margin(1e-15));

    // phi_{+-} has domain {0} union [1, 2]
    const BranchEval hole = eval_branch(Signature("+-"), QuadParam(0.5));
    CHECK_FALSE(hole.defined);
    CHECK_FALSE(hole.regular);

    const BranchEval origin = eval_branch(Signature("+-"), QuadParam(0.0));
    CHECK(origin.defined);
    CHECK_FALSE(origin.regular);
    CHECK(origin.value == 0.0);

    // isolated interior domain point of phi_{+-+-}
    const BranchEval isolated = eval_branch(Signature("+-+-"), QuadParam(1.0));
    CHECK(isolated.defined);
    CHECK_FALSE(isolated.regular);
    CHECK(isolated.value == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(isolated.first_vanishing_suffix.has_value());

    // a regular evaluation reports no vanishing suffix
    const BranchEval reg = eval_branch(Signature("+-+"), QuadParam(1.9));
    CHECK(reg.regular);
    CHECK_FALSE(reg.first_vanishing_suffix.has_value());
}

TEST_CASE("envelope bounds every defined branch value") {
    const Envelope e2 = envelope(QuadParam(2.0));
    CHECK(e2.lower == Catch::Approx(-2.0).margin(1e-15));
    CHECK(e2.upper == Catch::Approx(2.0).margin(1e-15));
    const Envelope e0 = envelope(QuadParam(0.0));
    CHECK(e0.upper == Catch::Approx(1.0).margin(1e-15));
    const Envelope eq = envelope(QuadParam(0.75));
    CHECK(eq.upper == Catch::Approx(1.5).margin(1e-15));

    for (int rank = 1; rank <= 6; ++rank) {
        for (const Signature& sig : all_signatures(rank)) {
            for (int i = 1; i <= 40; ++i) {
                const double t = 2.0 * i / 40;
                const BranchEval ev = eval_branch(sig, QuadParam(t));
                if (!ev.defined) continue;
                const Envelope env = envelope(QuadParam(t));
                REQUIRE(ev.value > env.lower);
                REQUIRE(ev.value < env.upper);
            }
        }
    }
}

TEST_CASE("flipping the leading sign negates the value exactly") {
    std::mt19937 rng(424242u);
    std::uniform_real_distribution<double> pick(0.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Signature sig = random_signature(rng, 10);
        std::string flipped = sig.str();
        flipped[0] = flipped[0] == '+' ? '-' : '+';
        const double t = pick(rng);
        const BranchEval a = eval_branch(sig, QuadParam(t));
        const BranchEval b = eval_branch(Signature(flipped), QuadParam(t));
        REQUIRE(a.defined == b.defined);
        if (a.defined) REQUIRE(a.value == -b.value);
    }
}

TEST_CASE("regular branch values are roots of the iterated map") {
    for (int rank = 1; rank <= 8; ++rank) {
        for (const Signature& sig : all_signatures(rank)) {
            for (int i = 1; i <= 20; ++i) {
                const double t = 2.0 * i / 20;
                const BranchEval ev = eval_branch(sig, QuadParam(t));
                if (!ev.regular) continue;
                double v = ev.value;
                for (int k = 0; k < rank; ++k) v = eval_map(QuadParam(t), v);
                REQUIRE(std::abs(v) <= 1e-9 * std::pow(2.0, rank));
            }
        }
    }
}

TEST_CASE("one application of the map drops the leading sign") {
    // q_t(phi_sigma(t)) = -phi_{sigma_2..sigma_n}(t) wherever both are defined
    std::mt19937 rng(777u);
    std::uniform_real_distribution<double> pick(0.0, 2.0);
    int checked = 0;
    for (int trial = 0; trial < 600; ++trial) {
        Signature sig = random_signature(rng, 10);
        if (sig.rank() < 2) continue;
        const double t = pick(rng);
        const BranchEval whole = eval_branch(sig, QuadParam(t));
        const BranchEval tail = eval_branch(sig.suffix(1), QuadParam(t));
        if (!whole.defined || !tail.defined) continue;
        REQUIRE(std::abs(eval_map(QuadParam(t), whole.value) + tail.value) <= 1e-10);
        ++checked;
    }
    REQUIRE(checked > 100);
}

TEST_CASE("closed form at t = 2") {
    const AtTwo plus2 = branch_at_two(Signature("++"));
    CHECK(plus2.radical == Catch::Approx(1.847759).margin(1e-6));
    const double pi = 3.141592653589793238462643383279502884;
    CHECK(plus2.trig == Catch::Approx(2.0 * std::sin(3.0 * pi / 8.0)).margin(1e-14));

    CHECK(branch_at_two(Signature("+-")).radical == Catch::Approx(0.765367).margin(1e-6));
    CHECK(branch_at_two(Signature("-")).radical == Catch::Approx(-std::sqrt(2.0)).margin(1e-14));

    for (int rank = 1; rank <= 10; ++rank) {
        for (const Signature& sig : all_signatures(rank)) {
            const AtTwo v = branch_at_two(sig);
            REQUIRE(std::abs(v.radical - v.trig) <= 1e-12);
        }
    }
}

TEST_CASE("definedness is monotone under prepending a sign") {
    std::mt19937 rng(13131u);
    std::uniform_real_distribution<double> pick(0.0, 2.0);
    for (int trial = 0; trial < 400; ++trial) {
        const Signature sig = random_signature(rng, 9);
        const double t = pick(rng);
        for (char lead : {'+', '-'}) {
            const Signature extended(std::string(1, lead) + sig.str());
            if (eval_branch(extended, QuadParam(t)).defined)
                REQUIRE(eval_branch(sig, QuadParam(t)).defined);
        }
    }
}

TEST_CASE("comparison predicts the numeric order on common regular points") {
    std::mt19937 rng(90210u);
    std::uniform_real_distribution<double> pick(0.0, 2.0);
    int checked = 0;
    while (checked < 1000) {
        const Signature a = random_signature(rng, 8);
        const Signature b = random_signature(rng, 8);
        if (a == b) continue;
        const double t = pick(rng);
        const BranchEval ea = eval_branch(a, QuadParam(t));
        const BranchEval eb = eval_branch(b, QuadParam(t));
        if (!ea.regular || !eb.regular) continue;
        REQUIRE(ea.value != eb.value);
        const Ordering ord = compare_signatures(a, b);
        REQUIRE((ord == Ordering::above) == (ea.value > eb.value));
        ++checked;
    }
}

TEST_CASE("suffix zeros on (0, 2]") {
    CHECK(suffix_zeros(Signature("-")).empty());
    CHECK(suffix_zeros(Signature("-+")).empty());

    const std::vector<double> z = suffix_zeros(Signature("+-"));
    REQUIRE(z.size() == 1);
    CHECK(z[0] == Catch::Approx(1.0).margin(1e-9));

    // phi_{--} shares the radicand t - sqrt(t), so it vanishes at 1 as well
    const std::vector<double> zm = suffix_zeros(Signature("--"));
    REQUIRE(zm.size() == 1);
    CHECK(zm[0] == Catch::Approx(1.0).margin(1e-9));

    CHECK_THROWS_AS(suffix_zeros(Signature("+-"), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(suffix_zeros(Signature("+-"), 0.5), std::invalid_argument);
}

TEST_CASE("branching points of the low-rank branches") {
    CHECK(branching_point(Signature("+++")).t_sigma == 0.0);
    CHECK(branching_point(Signature("+")).t_sigma == 0.0);
    CHECK(branching_point(Signature("+-")).t_sigma == Catch::Approx(1.0).margin(1e-9));
    CHECK(branching_point(Signature("+-+")).t_sigma ==
          Catch::Approx(1.7548776662466925).margin(1e-9));
    CHECK(branching_point(Signature("+-++")).t_sigma ==
          Catch::Approx(1.9407998065294847).margin(1e-9));
    CHECK(branching_point(Signature("+-+-")).t_sigma ==
          Catch::Approx(1.310702641336833).margin(1e-9));

    // independent of the leading sign
    for (const char* text : {"+-", "+-+", "+-++", "+--+", "+---"}) {
        std::string neg(text);
        neg[0] = '-';
        REQUIRE(branching_point(Signature(text)).t_sigma ==
                branching_point(Signature(neg)).t_sigma);
    }

    std::string deep(21, '+');
    CHECK_THROWS_AS(branching_point(Signature(deep)), std::length_error);
}

TEST_CASE("regular set is the half interval right of the branching point") {
    // scaled-down version of the full rank sweep: every rank-5 branch
    for (const Signature& sig : all_signatures(5)) {
        const double ts = branching_point(sig).t_sigma;
        int first_regular = -1;
        bool violation = false;
        for (int i = 0; i <= 2000; ++i) {
            const double t = 2.0 * i / 2000;
            const bool reg = eval_branch(sig, QuadParam(t)).regular;
            if (reg && first_regular < 0) first_regular = i;
            if (!reg && first_regular >= 0) violation = true;
        }
        REQUIRE(first_regular >= 0);
        REQUIRE_FALSE(violation);
        REQUIRE(std::abs(2.0 * first_regular / 2000 - ts) <= 2e-3);
    }
}
