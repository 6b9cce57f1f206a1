"""Built-in reference instances with their known certified quantities."""
from __future__ import annotations

import math
from fractions import Fraction as F

from .instance import Instance

PSTAR_TOL = 1e-12
LP_VALUE_TOL = 1e-12

EXAMPLES = {
    "5.1": {
        "instance": Instance.from_values([[1, -1]], [1]),
        "expected": {
            "s": 1, "c0": F(1), "c1": F(1), "r0": F(1), "rm": F(1), "pstar": 1.0,
            "l0_solutions": [(F(-1), F(0)), (F(0), F(-1)), (F(0), F(1)), (F(1), F(0))],
            "lp_p": 0.5,
            "lp_solutions": [(F(-1), F(0)), (F(0), F(-1)), (F(0), F(1)), (F(1), F(0))],
            "lp_value": 1.0,
            "pext_reference": [((F(0), F(-1)), (F(0), F(1))), ((F(0), F(1)), (F(0), F(1))),
                               ((F(1), F(0)), (F(1), F(0))), ((F(-1), F(0)), (F(1), F(0)))],
        },
    },
    "5.2": {
        "instance": Instance.from_values([[5, 1]], [2]),
        "expected": {
            "s": 1, "c0": F(2), "c1": F(10, 13), "r0": F(2), "rm": F(2, 5),
            "pstar": math.log(2) / math.log(5),
            "l0_solutions": [(F(-2, 5), F(0)), (F(0), F(-2)), (F(0), F(2)), (F(2, 5), F(0))],
            "lp_p": 0.3,
            "lp_solutions": [(F(-2, 5), F(0)), (F(2, 5), F(0))],
            "lp_value": 0.4**0.3,
            "pext_reference": [((F(-2, 5), F(0)), (F(2, 5), F(0))), ((F(0), F(-2)), (F(0), F(2))),
                               ((F(2, 5), F(0)), (F(2, 5), F(0))), ((F(0), F(2)), (F(0), F(2)))],
        },
    },
}
