#ifndef POLYIMAGE_VERIFY_HPP
#define POLYIMAGE_VERIFY_HPP

#include "polyimage/chain.hpp"
#include "polyimage/positioning.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyimage {

struct SamplerConfig {
    std::size_t forward_count = 100000;
    std::size_t coverage_count = 1000;
    std::size_t derivative_count = 10000;
    std::size_t fiber_count = 100;
    std::uint64_t seed = 1;
    Rat eps = rat(1, 1000000);
    std::vector<long> radius_schedule = {1, 4, 16, 64, 256};
    bool structured_extras = true;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::size_t tested = 0;
    std::size_t failures = 0;
    std::vector<std::string> witnesses;  // first few counterexamples / misses
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool pass() const;
    void add(CheckResult r);
    void merge(const VerifyReport& other);
};

// Deterministic rational point stream with a radius schedule and structured
// extras (axis points, small-coordinate points).
class Sampler {
public:
    Sampler(std::size_t dim, const SamplerConfig& cfg);
    RatVec next();

private:
    std::size_t dim_;
    std::vector<long> radii_;
    std::uint64_t state_;
    std::size_t emitted_ = 0;
    bool structured_;
    std::uint64_t next_u64();
    long next_range(long lo, long hi);  // inclusive
};

// Exact membership of chain(x) in the target, decided through outward-rounded
// interval evaluation with precision escalation and an exact rational
// fallback. The verdict is always exact.
bool forward_member(const MapChain& chain, const RatVec& x, bool* used_exact = nullptr);

VerifyReport forward_containment(const MapChain& chain, const SamplerConfig& cfg);

// Backward preimage search for one target point; residual < eps certified by
// interval arithmetic on the forward pass.
std::optional<RatVec> cover_point(const MapChain& chain, const RatVec& y, const Rat& eps);

VerifyReport coverage(const MapChain& chain, const SamplerConfig& cfg,
                      const std::vector<RatVec>& extra_targets = {});

// Derivative and fixed-point suites for a single trim stage.
VerifyReport derivative_positivity(const Stage& stage, const SamplerConfig& cfg,
                                   const std::optional<RegionBounds>& strong_region =
                                       std::nullopt);
VerifyReport fixed_points(const Stage& stage, const SamplerConfig& cfg);

// Per-fiber exact certification of the trim lemma set equalities. The stage
// must carry its source polyhedron (the polyhedron being trimmed, in the
// stage's own coordinates).
VerifyReport fiber_contract_check(const Stage& stage, const SamplerConfig& cfg);

VerifyReport validate_chain(const MapChain& chain, const SamplerConfig& cfg);

}  // namespace polyimage

#endif
