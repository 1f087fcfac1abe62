#include "polyimage/optimize.hpp"

#include "polyimage/verify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyimage {

namespace {

double eval_objective(const MPoly& objective, const std::vector<double>& y) {
    return objective.eval_double(y);
}

std::uint64_t mix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform(std::uint64_t& s, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(mix(s) % (1ULL << 53)) /
                             static_cast<double>(1ULL << 53));
}

}  // namespace

OptimizeResult optimize(const MapChain& chain, const MPoly& objective,
                        std::size_t starts, std::size_t iters, std::uint64_t seed) {
    if (objective.nvars() != chain.out_dim)
        throw std::invalid_argument("optimize: objective dimension mismatch");
    std::size_t n = chain.in_dim;
    OptimizeResult out;
    out.best_value = std::numeric_limits<double>::infinity();
    std::uint64_t state = seed ^ 0x5eedULL;

    for (std::size_t s = 0; s < starts; ++s) {
        std::vector<double> x(n);
        double radius = (s % 4 == 0) ? 1.0 : (s % 4 == 1 ? 4.0 : (s % 4 == 2 ? 16.0 : 64.0));
        for (auto& v : x) v = uniform(state, -radius, radius);
        double fx = eval_objective(objective, chain.eval_double(x));
        double step = radius / 2;
        for (std::size_t it = 0; it < iters && step > 1e-9; ++it) {
            bool improved = false;
            for (std::size_t i = 0; i < n; ++i) {
                for (double dir : {+1.0, -1.0}) {
                    std::vector<double> cand = x;
                    cand[i] += dir * step;
                    double fc = eval_objective(objective, chain.eval_double(cand));
                    if (std::isfinite(fc) && fc < fx) {
                        x = cand;
                        fx = fc;
                        improved = true;
                    }
                }
            }
            if (!improved) step /= 2;
        }
        if (fx < out.best_value) {
            out.best_value = fx;
            out.best_input = x;
        }
    }
    if (!out.best_input.empty()) out.best_image = chain.eval_double(out.best_input);

    // exact membership re-check of the rounded best input, mapped forward
    if (!out.best_input.empty()) {
        RatVec xr;
        for (double v : out.best_input) xr.push_back(rat_round(Rat(v), 48));
        out.exact_member = forward_member(chain, xr);
    }

    // baseline: rejection sampling of the target set
    {
        SamplerConfig cfg;
        cfg.seed = seed ^ 0xba5e11ULL;
        Sampler sampler(chain.out_dim, cfg);
        double best = std::numeric_limits<double>::infinity();
        std::size_t kept = 0;
        for (int k = 0; k < 20000 && kept < 4000; ++k) {
            RatVec y = sampler.next();
            if (!chain.target.member(y)) continue;
            ++kept;
            std::vector<double> yd(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) yd[i] = rat_double(y[i]);
            best = std::min(best, eval_objective(objective, yd));
        }
        out.baseline_value = best;
        out.baseline_samples = kept;
    }
    return out;
}

}  // namespace polyimage
