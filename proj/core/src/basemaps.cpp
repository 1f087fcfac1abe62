#include "polyimage/basemaps.hpp"

#include <mutex>
#include <sstream>

namespace polyimage {

std::string BaseMapKey::str() const {
    switch (kind) {
        case Kind::ClosedQuadrantComplement: return "closed-quadrant-complement";
        case Kind::OpenQuadrantComplement: return "open-quadrant-complement";
        case Kind::PolygonComplement: return "unbounded-polygon-complement(" + polygon + ")";
        case Kind::PolygonInteriorComplement:
            return "unbounded-polygon-interior-complement(" + polygon + ")";
    }
    return "?";
}

bool BaseMapKey::operator<(const BaseMapKey& o) const {
    if (kind != o.kind) return kind < o.kind;
    return polygon < o.polygon;
}

BaseMapKey parse_base_key(const std::string& text, const std::string& polygon) {
    BaseMapKey k;
    k.polygon = polygon;
    if (text == "closed-quadrant-complement") {
        k.kind = BaseMapKey::Kind::ClosedQuadrantComplement;
    } else if (text == "open-quadrant-complement") {
        k.kind = BaseMapKey::Kind::OpenQuadrantComplement;
    } else if (text == "unbounded-polygon-complement") {
        k.kind = BaseMapKey::Kind::PolygonComplement;
    } else if (text == "unbounded-polygon-interior-complement") {
        k.kind = BaseMapKey::Kind::PolygonInteriorComplement;
    } else {
        throw std::invalid_argument("unknown base map key: " + text);
    }
    return k;
}

MissingBaseMap::MissingBaseMap(const BaseMapKey& k)
    : std::runtime_error("missing base map for key '" + k.str() +
                         "': the 2-D recursion floor needs a validated fixture "
                         "registered for this key"),
      key(k) {}

namespace {

Polyhedron polygon_from_key(const BaseMapKey& key);

}  // namespace

TargetSet base_key_target(const BaseMapKey& key) {
    switch (key.kind) {
        case BaseMapKey::Kind::ClosedQuadrantComplement:
            return TargetSet::complement(Polyhedron::orthant(2));
        case BaseMapKey::Kind::OpenQuadrantComplement:
            return TargetSet::interior_complement(Polyhedron::orthant(2));
        case BaseMapKey::Kind::PolygonComplement:
            return TargetSet::complement(polygon_from_key(key));
        case BaseMapKey::Kind::PolygonInteriorComplement:
            return TargetSet::interior_complement(polygon_from_key(key));
    }
    throw std::logic_error("base_key_target: bad key");
}

namespace {

// polygon keys carry "b0 b1 b2; b0 b1 b2; ..." rows of half-space coefficients
Polyhedron polygon_from_key(const BaseMapKey& key) {
    std::vector<HalfSpace> hs;
    std::istringstream rows(key.polygon);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::istringstream cs(row);
        HalfSpace h;
        std::string tok;
        while (cs >> tok) h.coeffs.push_back(rat_parse(tok));
        if (h.coeffs.size() != 3)
            throw std::invalid_argument("polygon key rows need 3 coefficients");
        hs.push_back(std::move(h));
    }
    return Polyhedron(2, std::move(hs));
}

}  // namespace

RegisterOutcome Registry::register_entry(BaseMapEntry entry, const SamplerConfig& cfg) {
    RegisterOutcome out;
    if (entry.chain.in_dim != 2 || entry.chain.out_dim != 2) {
        CheckResult r;
        r.name = "base-map-shape";
        r.pass = false;
        r.note = "base maps must map R^2 -> R^2";
        out.report.add(std::move(r));
        return out;
    }
    entry.chain.target = base_key_target(entry.key);
    out.report = forward_containment(entry.chain, cfg);
    if (out.report.pass()) out.report.merge(coverage(entry.chain, cfg));
    if (!out.report.pass()) return out;
    entry.validated = true;
    out.accepted = true;
    std::unique_lock lock(guard_);
    entries_[entry.key] = std::move(entry);
    return out;
}

MapChain Registry::get(const BaseMapKey& key) const {
    std::shared_lock lock(guard_);
    auto it = entries_.find(key);
    if (it == entries_.end() || !it->second.validated) throw MissingBaseMap(key);
    return it->second.chain;
}

bool Registry::has(const BaseMapKey& key) const {
    std::shared_lock lock(guard_);
    auto it = entries_.find(key);
    return it != entries_.end() && it->second.validated;
}

std::vector<BaseMapEntry> Registry::list() const {
    std::shared_lock lock(guard_);
    std::vector<BaseMapEntry> out;
    for (const auto& [k, e] : entries_) out.push_back(e);
    return out;
}

std::vector<RatFn> open_quadrant_complement_components() {
    // (x, y) -> (y^6 - 3 x^4 y^2, x^6 - 3 x^2 y^4)
    MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
    MPoly first = y.pow(6) - (x.pow(4) * y.pow(2)).scaled(Rat(3));
    MPoly second = x.pow(6) - (x.pow(2) * y.pow(4)).scaled(Rat(3));
    return {RatFn::from_poly(first), RatFn::from_poly(second)};
}

}  // namespace polyimage
