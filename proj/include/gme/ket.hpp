#pragma once

// Dirac-ket text format.
//
//   # comment to end of line
//   dims: 2 2 3                      (optional header, first line)
//   (|100> + |010> + |001>)/sqrt(3)
//   1/sqrt(6)*(|0011>+|1100>) + exp(2i*pi/3)/sqrt(6)*(|0101>+|1010>)
//
// Kets use one digit per mode (|0112>) or comma-separated levels (|0,11,2>).
// Coefficients are complex expressions built from decimals, `i`, `pi`,
// sqrt(...), exp(...), + - * / and parentheses. A number directly followed by
// `i` is imaginary (2i, 0.5i). Juxtaposition before a ket, `(` or a function
// name means multiplication.
//
// Coefficients in the text are the state amplitudes; to_tensor stores their
// complex conjugates (see StateTensor).

#include "gme/tensor.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace gme {

struct KetTerm {
    cplx coeff;
    std::vector<std::size_t> levels;

    bool operator==(const KetTerm&) const = default;
};

struct KetExpr {
    /// Sorted by `levels`, no duplicates, no zero coefficients.
    std::vector<KetTerm> terms;
    Dims dims;
    bool dims_declared = false;

    bool operator==(const KetExpr&) const = default;
};

/// Throws ParseError.
KetExpr parse_ket(std::string_view text);

/// Full-precision text that parses back to an identical term list.
std::string render_ket(const KetExpr& e);

enum class NormPolicy { Auto, Strict };

struct TensorBuild {
    StateTensor tensor;
    /// Factor applied to the amplitudes (1 under Strict).
    double scale = 1.0;
};

/// Throws ParseError (ZeroState, NormViolation).
TensorBuild to_tensor(const KetExpr& e, NormPolicy policy = NormPolicy::Auto);

/// Inverse of to_tensor for a stored tensor: nonzero entries, conjugated back
/// to amplitudes.
KetExpr from_tensor(const StateTensor& t);

} // namespace gme
