#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "twistaff/scalar.hpp"

namespace twistaff {

// Affine-linear value over a labelled basis: constant + sum coeffs[i]*label_i.
struct LinearForm {
    Scalar constant;
    std::vector<Scalar> coeffs;

    bool has_vector() const;
};

// Grammar: sums/differences of products; factors are integers, labels,
// "z" (zeta_m), "zeta_N", parentheses, and "^k" powers of scalars.
// Products may contain at most one vector factor; division only by scalars.
LinearForm parse_linear(std::string_view text, const std::vector<std::string>& labels, long m = 1);

// Element of the labelled space; a nonzero constant term is rejected.
std::vector<Scalar> parse_vector(std::string_view text, const std::vector<std::string>& labels,
                                 long m = 1);

// Renders sum c_i*label_i with scalars in z = zeta_m.
std::string render_vector(const std::vector<Scalar>& v, const std::vector<std::string>& labels,
                          long m);

}  // namespace twistaff
