#pragma once
// Line-oriented text formats.
//
//   NCPOLY1 [mode=free|transpose|adjoint]
//   <coeff> : <word>            one term per line; word "1" or "x1 x2* ..."
//
//   TRPOLY1 [mode=...]
//   <coeff> : tr(<word>) ... <word>
//
//   GENPOLY1 n=<n> [mode=...]
//   deg=<l>
//   [a b; c d] x1 [..] x2* [..]  l+1 inline matrices alternating with letters
//
//   MTX1 n=<n> g=<g> field=real|complex
//   g blocks of n rows with n entries each; complex entries as a+bi / a-bi
//
// Lines starting with '#' and blank lines are ignored. Several NCPOLY1
// blocks in one stream form a tuple. Without a mode key the mode is
// `transpose` if any starred letter occurs and `free` otherwise.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "freenc/genpoly.hpp"
#include "freenc/matrix.hpp"
#include "freenc/ncpoly.hpp"
#include "freenc/tracepoly.hpp"

namespace freenc::textio {

// Parses "1.5", "-2", "1e-3", "0.5+2i", "3-1e-2i", "2i".
Complex parse_complex(std::string_view s);

// Word tokens "x3", "x3*"; "1" denotes the unit word.
Word parse_word(std::string_view s);

std::string write_ncpoly(const NCPoly& p);
std::string write_ncpoly_tuple(const std::vector<NCPoly>& ps);
std::string write_qncpoly(const QNCPoly& p);
NCPoly read_ncpoly(std::istream& in);
std::vector<NCPoly> read_ncpoly_tuple(std::istream& in);

std::string write_tracepoly(const TracePoly& p);
TracePoly read_tracepoly(std::istream& in);

std::string write_genpoly(const GenPoly& p);
GenPoly read_genpoly(std::istream& in);

std::string write_mattuple(const MatTuple& x);
MatTuple read_mattuple(std::istream& in);

// Convenience wrappers over std::istringstream.
NCPoly ncpoly_from_string(const std::string& s);
std::vector<NCPoly> ncpoly_tuple_from_string(const std::string& s);
TracePoly tracepoly_from_string(const std::string& s);
GenPoly genpoly_from_string(const std::string& s);
MatTuple mattuple_from_string(const std::string& s);

}  // namespace freenc::textio
