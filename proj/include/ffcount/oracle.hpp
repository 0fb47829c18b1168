// Brute-force factor-count histograms by exhaustive enumeration.
#pragma once

#include "ffcount/bigint.hpp"
#include "ffcount/field.hpp"
#include "ffcount/irreducibles.hpp"

#include <map>

namespace ffc {

struct OracleTable {
    FieldSize field;
    unsigned n = 0;
    // k -> number of monic polynomials of degree n with exactly k
    // irreducible factors counted with multiplicity.
    std::map<unsigned, Int> histogram;
    std::map<unsigned, Int> no_linear_histogram;
};

// Number of irreducible factors of f with multiplicity, by trial division
// against an enumerated table covering degrees up to deg(f).
unsigned omega(const Poly& f, const IrreducibleTable& irr);

// Enumerates all q^n monic polynomials of degree n in lexicographic order.
// Linear-factor freeness is decided two independent ways per polynomial
// (root evaluation and the division transcript) and cross-checked.
// threads <= 0 picks the configured default.
OracleTable exhaustive_table(const FieldSize& field, unsigned n,
                             double guard = 1e7, int threads = 0);

} // namespace ffc
