#pragma once

#include <cstdint>
#include <string>

#include "casimir/radial.hpp"
#include "casimir/series.hpp"

namespace casimir {

// Brute-force construction inside the irreducible highest weight module
// V(lambda): weight spaces are spanned by words in the Chevalley lowering
// operators f0, f1, reduced modulo the radical of the contravariant form.
// The chi-twisted functional and the eta-twisted vector are solved layer by
// layer; their diagonal pairing is the restriction of the twisted matrix
// coefficient. Intended for small depth and level only.
struct OracleResult {
    bool admissible = false;
    std::string obstruction;  // set when the twisted-invariant recursion fails
    TruncatedSeries psi;      // normalized restriction, valid when admissible
};

OracleResult oracle_spherical_raw(const Weight& lambda, const Character1D& eta,
                                  const Character1D& chi, int depth);

// dim V(lambda)_{lambda - x alpha0 - y alpha1} via the rank of the
// contravariant Gram matrix on lowering words.
std::int64_t oracle_weight_multiplicity(const Weight& lambda, int x, int y);

}  // namespace casimir
