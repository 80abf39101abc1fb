#pragma once

#include <stdexcept>
#include <string>

namespace afl3 {

/// Base class for every error thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid user-facing parameter (bad prime, negative precision, ...).
struct bad_parameter : error {
    using error::error;
};

/// A query whose answer is not determined at the working precision.
/// Callers may retry the whole computation at higher precision.
struct precision_exhausted : error {
    using error::error;
};

struct invert_zero : error {
    using error::error;
};

struct eta_of_zero : error {
    using error::error;
};

struct unsatisfiable_constraint : error {
    using error::error;
};

struct not_regular_semisimple : error {
    using error::error;
};

/// The Cayley transform was requested at a point of its divisor,
/// i.e. det(kappa - x) is zero or indistinguishable from zero.
struct on_divisor : error {
    using error::error;
};

struct no_unit_kappa : error {
    using error::error;
};

struct no_unit_lambda : error {
    using error::error;
};

struct non_integral_charpoly : error {
    using error::error;
};

/// A coset enumeration found support touching the window boundary.
struct window_too_small : error {
    using error::error;
};

struct degenerate_params : error {
    using error::error;
};

struct wrong_case : error {
    using error::error;
};

struct invalid_level : error {
    using error::error;
};

} // namespace afl3
