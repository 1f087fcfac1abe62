#ifndef POLYIMAGE_BASEMAPS_HPP
#define POLYIMAGE_BASEMAPS_HPP

#include "polyimage/chain.hpp"
#include "polyimage/verify.hpp"

#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>

namespace polyimage {

// The n = 2 recursion floor consumes externally sourced plane maps. They are
// data: nothing enters the registry without passing the full verification
// suite against the key's target set.
struct BaseMapKey {
    enum class Kind {
        ClosedQuadrantComplement,   // image R^2 \ {x>=0, y>=0}
        OpenQuadrantComplement,     // image R^2 \ {x>0, y>0}
        PolygonComplement,          // image R^2 \ K
        PolygonInteriorComplement,  // image R^2 \ Int(K)
    };
    Kind kind = Kind::ClosedQuadrantComplement;
    std::string polygon;  // canonical serialization of K for the polygon kinds

    std::string str() const;
    bool operator<(const BaseMapKey& o) const;
};

BaseMapKey parse_base_key(const std::string& text, const std::string& polygon);

struct BaseMapEntry {
    BaseMapKey key;
    MapChain chain;
    std::string provenance;
    bool validated = false;
};

struct MissingBaseMap : std::runtime_error {
    explicit MissingBaseMap(const BaseMapKey& key);
    BaseMapKey key;
};

struct RegisterOutcome {
    bool accepted = false;
    VerifyReport report;  // failure details carry the first counterexample
};

TargetSet base_key_target(const BaseMapKey& key);

// The artifact's only mutable shared state: exclusive writes, concurrent
// reads once entries are validated.
class Registry {
public:
    RegisterOutcome register_entry(BaseMapEntry entry, const SamplerConfig& cfg);
    MapChain get(const BaseMapKey& key) const;  // throws MissingBaseMap
    bool has(const BaseMapKey& key) const;
    std::vector<BaseMapEntry> list() const;

private:
    mutable std::shared_mutex guard_;
    std::map<BaseMapKey, BaseMapEntry> entries_;
};

// Built-in plane map with image R^2 \ {x>0, y>0}: the squares map onto the
// closed quadrant, the complex cube opens the sector to three right angles,
// and a quarter turn places it. Shipped as the default open-quadrant fixture.
std::vector<RatFn> open_quadrant_complement_components();

}  // namespace polyimage

#endif
