"""GGS groups acting on the p-regular rooted tree.

Words are exchanged in text form ("a1 b2 a1"), vertices as digit strings
("021"), orders and other large integers as Python ints.
"""

from ._core import (
    Group,
    __version__,
    diffuse_search,
    extremal_elements,
    family_vector,
    quotient_order,
    quotient_report,
    up_count,
    up_search,
)

__all__ = [
    "Group",
    "diffuse_search",
    "extremal_elements",
    "family_vector",
    "quotient_order",
    "quotient_report",
    "up_count",
    "up_search",
    "__version__",
]
