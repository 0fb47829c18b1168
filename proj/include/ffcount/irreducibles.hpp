// Counting and enumerating monic irreducible polynomials over F_q.
#pragma once

#include "ffcount/bigint.hpp"
#include "ffcount/field.hpp"

#include <cstdint>
#include <vector>

namespace ffc {

// Monic polynomial over a prime field: little-endian coefficients of the
// non-leading terms, so degree == c.size() and the leading 1 is implicit.
// The constant polynomial 1 has empty c.
struct Poly {
    std::vector<std::uint32_t> c;

    unsigned degree() const { return static_cast<unsigned>(c.size()); }
    bool operator==(const Poly& o) const { return c == o.c; }
};

std::uint64_t eval_poly(const Poly& f, std::uint64_t x, std::uint64_t q);

// Remainder of f modulo the monic divisor g, coefficient arithmetic mod q.
// Returns true when g divides f exactly.
bool divides(const Poly& g, const Poly& f, std::uint64_t q);

// Divide f by g once; quotient replaces f. Caller must know g | f.
Poly quotient(const Poly& g, const Poly& f, std::uint64_t q);

struct IrreducibleTable {
    FieldSize field;
    // counts[d] = number of monic irreducibles of degree d, d = 1..d_max.
    std::vector<Int> counts;
    // elements[d] in lexicographic coefficient order; empty unless enumerated.
    std::vector<std::vector<Poly>> elements;

    unsigned d_max() const { return static_cast<unsigned>(counts.size()) - 1; }
    bool enumerated() const { return !elements.empty(); }
};

// Exact count via Moebius inversion of q^d = sum_{e|d} e * count(e).
Int count_irreducibles(const FieldSize& field, unsigned d);

IrreducibleTable count_table(const FieldSize& field, unsigned d_max);

// Exhaustive enumeration by trial division. Prime q only; refuses when
// q^d_max exceeds the guard.
IrreducibleTable enumerate_irreducibles(const FieldSize& field, unsigned d_max,
                                        double guard = 1e7);

} // namespace ffc
