#ifndef POLYIMAGE_IO_HPP
#define POLYIMAGE_IO_HPP

#include "polyimage/basemaps.hpp"
#include "polyimage/chain.hpp"
#include "polyimage/verify.hpp"

#include <iosfwd>
#include <string>

namespace polyimage {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// polynomial text form: "poly <nvars> <nterms> { e1 .. ek p/q }*",
// terms in graded-lex order
std::string write_poly(const MPoly& p);
MPoly parse_poly(const std::string& line);

std::string write_polyhedron(const Polyhedron& K);
Polyhedron parse_polyhedron(const std::string& text);

// chain files carry exact stage parameters; components and certificates are
// reconstructed on load, so a written file always parses back to a chain
// with identical behavior and identical re-serialization
std::string write_chain(const MapChain& chain);
MapChain parse_chain(const std::string& text);

std::string write_basemap(const BaseMapEntry& entry);
BaseMapEntry parse_basemap(const std::string& text);

std::string report_text(const VerifyReport& rep);
std::string report_json(const VerifyReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace polyimage

#endif
