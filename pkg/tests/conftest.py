import sys
from fractions import Fraction

import pytest

from qdurrmeyer import QContext

# exact sweeps at n = 512 produce rationals with thousands of digits; keep
# assertion reprs from tripping the int -> str guard
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(2_000_000)

Q_GRID = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))
X_GRID_16 = tuple(Fraction(i, 17) for i in range(1, 17))


@pytest.fixture(scope="session")
def ctx_half():
    return QContext.exact(1, 2)


@pytest.fixture(scope="session")
def ctx_grid():
    return tuple(QContext.exact(q) for q in Q_GRID)
