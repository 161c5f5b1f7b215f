"""Heights, point counts and local densities for the p-torsion wound group
(F^{1/p})^x / F^x over F = F_q(t)."""

from .counting import CountTable, count_points, count_points_naive, count_table, enumerate_points
from .denef import leading_constant, local_density, valuation_histogram
from .errors import BudgetExceeded
from .gf import GF, Field, FieldElement, field_create, field_for
from .poles import BundleClass, pole_structure
from .polyfield import Place, Polynomial, RationalFunction, places_up_to
from .wound import GroupPoint, group_inv, group_mul, height, make_point, norm_form

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "BundleClass",
    "CountTable",
    "Field",
    "FieldElement",
    "GF",
    "GroupPoint",
    "Place",
    "Polynomial",
    "RationalFunction",
    "count_points",
    "count_points_naive",
    "count_table",
    "enumerate_points",
    "field_create",
    "field_for",
    "group_inv",
    "group_mul",
    "height",
    "leading_constant",
    "local_density",
    "make_point",
    "norm_form",
    "places_up_to",
    "pole_structure",
    "valuation_histogram",
]
