// Follow one preimage branch from its birth to t = 2: where it is defined,
// where it is regular, and its two closed forms at the right endpoint.
#include <qel/qel.hpp>

#include <cstdio>

int main() {
    const qel::Signature sig("+-+");
    const double born = qel::branching_point(sig).t_sigma;
    std::printf("branch %s is regular exactly on (%.12f, 2]\n", sig.str().c_str(), born);
    for (double t : {0.5, 1.0, 1.5, born, 1.8, 2.0}) {
        const qel::BranchEval e = qel::eval_branch(sig, qel::QuadParam(t));
        if (!e.defined)
            std::printf("  t = %-15.12g undefined\n", t);
        else
            std::printf("  t = %-15.12g value %15.12f (%s)\n", t, e.value,
                        e.regular ? "regular" : "vanishing radicand");
    }
    const qel::AtTwo v = qel::branch_at_two(sig);
    std::printf("closed forms at t = 2: radical %.15f, trigonometric %.15f\n", v.radical, v.trig);
    return 0;
}
