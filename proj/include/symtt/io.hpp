#pragma once

#include <iosfwd>
#include <string>

#include "symtt/mps.hpp"
#include "symtt/symmetry.hpp"

namespace symtt {

// Text formats, one "<re> <im>" pair per line with 17 significant digits.
//   MAT1 <rows> <cols>
//   VEC1 <p>
//   MPS1 <p> <open|periodic> / DIMS D_1 .. D_{p+1} / SITE j, A0 r c, A1 r c
//   WIT1 <kind> <param> <count> / WIT <kind> j, MAT r c
// Readers throw ParseError on malformed input.

std::string format_double(double v);

void write_matrix(std::ostream& os, const CMatrix& a);
CMatrix read_matrix(std::istream& is);

void write_vector(std::ostream& os, const CVector& x);
CVector read_vector(std::istream& is);

void write_mps(std::ostream& os, const MPSState& m);
MPSState read_mps(std::istream& is);

void write_witness(std::ostream& os, const SymmetryWitness& w);
SymmetryWitness read_witness(std::istream& is);

// File wrappers; a failed open is a ParseError naming the path.
CMatrix load_matrix(const std::string& path);
CVector load_vector(const std::string& path);
MPSState load_mps(const std::string& path);
SymmetryWitness load_witness(const std::string& path);

void save_matrix(const std::string& path, const CMatrix& a);
void save_vector(const std::string& path, const CVector& x);
void save_mps(const std::string& path, const MPSState& m);
void save_witness(const std::string& path, const SymmetryWitness& w);

}  // namespace symtt
