#pragma once

#include <string>

#include "quermass/sphere.hpp"

namespace quermass {

/// Build a support function from a JSON body spec. Kinds:
///   {"kind":"ball","n":3,"radius":1.0}
///   {"kind":"ellipsoid","n":3,"semiaxes":[2,1,1]}            (or "matrix": n x n SPD)
///   {"kind":"translate","offset":[0.1,0,0],"child":{...}}
///   {"kind":"minkowski","t":0.5,"children":[{...},{...}]}
///   {"kind":"perturbed_ball","n":3,"eps":0.05,"field":{...}}
/// expect_n = 0 accepts any dimension; otherwise a mismatch is an error.
/// Malformed specs raise std::runtime_error.
SphereField body_from_spec(const std::string& text, int expect_n = 0);
SphereField body_from_file(const std::string& path, int expect_n = 0);

/// Build a field from a JSON field spec: coefficients over the orthonormal
/// restricted-harmonic basis (harmonic_basis order, degrees 0..max_degree,
/// max_degree <= 6):
///   {"max_degree":2,"coefficients":[0,0,0,0.3,0,...],"name":"phi"}
SphereField field_from_spec(const std::string& text, int n);

}  // namespace quermass
