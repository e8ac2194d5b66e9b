from __future__ import annotations

import numpy as np
import pytest

from quadrica import Config, SquareRing, build_example, build_near_ring, cyclic, set_config

# every family/modulus combination with a lawful epsilon; 20 rings in all
RING_SPECS = (
    [(kind, n, None) for kind in ("classical", "rnil", "lambda", "tensor", "sym") for n in (2, 3, 4)]
    + [("gamma", 2, 0), ("gamma", 2, 1), ("gamma", 3, 0), ("gamma", 4, 0), ("gamma", 4, 2)]
)


@pytest.fixture(autouse=True)
def _default_config():
    """Tests poke at the global caps/profile; always start from defaults."""
    set_config(Config())
    yield
    set_config(Config())


@pytest.fixture(scope="session")
def ring_zoo():
    return {spec: build_example(spec[0], spec[1], epsilon=spec[2]) for spec in RING_SPECS}


def triangular_square_ring() -> SquareRing:
    """A verified square ring whose underlying ring is NOT commutative:
    upper-triangular 2x2 matrices over Z/2 with everything above degree
    one trivial.  Used to exercise the commutativity gate."""
    mats = [(a, b, c) for a in range(2) for b in range(2) for c in range(2)]
    idx = {m: i for i, m in enumerate(mats)}
    add = np.array(
        [[idx[((a1 + a2) % 2, (b1 + b2) % 2, (c1 + c2) % 2)] for (a2, b2, c2) in mats] for (a1, b1, c1) in mats]
    )
    mul = np.array(
        [[idx[((a1 * a2) % 2, (a1 * b2 + b1 * c2) % 2, (c1 * c2) % 2)] for (a2, b2, c2) in mats] for (a1, b1, c1) in mats]
    )
    ring = build_near_ring(add, mul)
    trivial = cyclic(1)
    zero1 = np.zeros(1, dtype=np.int64)
    return SquareRing(ring, trivial, np.zeros((8, 8, 1, 8), dtype=np.int64), np.zeros(8, dtype=np.int64), zero1, zero1)
