from .distributions import (
    chi_square_cdf,
    chi_square_sf,
    f_cdf,
    f_sf,
    normal_cdf,
    normal_sf,
    student_t_cdf,
    student_t_sf,
    student_t_two_sided,
)
from .linalg import (
    PentadiagonalSystem,
    QRFactor,
    as_matrix,
    qr_factor,
    solve_least_squares,
    solve_pentadiagonal,
)
from .special import betainc, gammainc_lower, gammainc_upper

__all__ = [
    "PentadiagonalSystem",
    "QRFactor",
    "as_matrix",
    "betainc",
    "chi_square_cdf",
    "chi_square_sf",
    "f_cdf",
    "f_sf",
    "gammainc_lower",
    "gammainc_upper",
    "normal_cdf",
    "normal_sf",
    "qr_factor",
    "solve_least_squares",
    "solve_pentadiagonal",
    "student_t_cdf",
    "student_t_sf",
    "student_t_two_sided",
]
