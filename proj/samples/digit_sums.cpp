// Expands a few rationals, then compares centred Luroth digit sums with the limit law.

#include "oppenheim/oppenheim.hpp"

#include <cmath>
#include <cstdio>

int main() {
    using namespace oppenheim;

    for (const char* x : {"3/4", "1/3", "0.1415926"}) {
        const auto q = expansions::parse_rational(x);
        const auto seq = expansions::expand(expansions::ExpansionKind::luroth, q, 8);
        std::printf("%-10s luroth:", x);
        for (const auto& d : seq.digits) std::printf(" %s", d.str().c_str());
        std::printf("%s\n", seq.terminated ? "  (finite)" : "");
    }

    experiments::ExperimentConfig cfg;
    cfg.name = "demo";
    cfg.kind = experiments::RunKind::distributional;
    cfg.mode = "classical_luroth";
    cfg.n_grid = {100, 1000};
    cfg.replications = 2000;
    const auto rec = experiments::run(cfg).record;
    std::printf("\n%8s %10s %10s\n", "n", "ks", "median");
    for (const auto& r : rec.rows)
        std::printf("%8zu %10.4f %10.4f  F(median) = %.4f\n", r.n, r.ks, r.median, limitlaw::cdf({1.0, 0.0}, r.median));
}
