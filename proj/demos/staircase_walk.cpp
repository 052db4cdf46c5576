// Where the s_n staircase climbs: sample the count of minimal-order preimages
// of the critical point across the parameter range and refine every jump.
#include <qel/qel.hpp>

#include <cstdio>

int main() {
    const unsigned threads = qel::default_thread_count();
    for (int n = 1; n <= 5; ++n) {
        const qel::StaircaseSample st = qel::staircase(n, 0.0, 2.0, 1200, threads);
        std::printf("s_%d reaches %lld; jumps:", n, st.values.back());
        for (const auto& j : st.jumps) std::printf("  %.6f (+%lld)", j.t, j.increment);
        std::printf("\n");
    }
    std::printf("\nentropy along the way (depth 16):\n");
    for (double t : {0.5, 1.2, 1.5, 1.8, 2.0}) {
        const qel::EntropyEstimate est = qel::entropy_estimate(qel::QuadParam(t), 16);
        std::printf("  t = %.2f  h = %.6f\n", t, est.h);
    }
    return 0;
}
