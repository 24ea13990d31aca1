"""Random realized arrangements for property tests."""

from __future__ import annotations

import random

from ..gaussian import GaussQ
from ..polyhedra.matrix import ExactMatrix, kernel_basis
from .ideal import LinearIdeal


def random_kernel_matrix(rng: random.Random, rank: int, size: int, gaussian: bool = True) -> ExactMatrix:
    """A ``rank x size`` matrix of full row rank without zero columns.

    Small entries make parallel and concurrent hyperplanes common, so
    non-generic matroids are well represented.
    """
    while True:
        rows = []
        for _ in range(rank):
            row = []
            for _ in range(size):
                x = GaussQ(rng.randint(-2, 2))
                if gaussian and rng.random() < 0.15:
                    x = x * GaussQ(0, 1)
                row.append(x)
            rows.append(row)
        b = ExactMatrix(rows, cols=size)
        if b.rank() == rank and all(any(b[i, j] for i in range(rank)) for j in range(size)):
            return b


def random_essential_ideal(rng: random.Random, max_hyperplanes: int = 6, max_rank: int = 3,
                           gaussian: bool = True) -> LinearIdeal:
    """Ideal over monomials ``1, x1, ..., xm`` whose arrangement has the drawn kernel matrix."""
    rank = rng.randint(2, max_rank)
    size = rng.randint(rank + 1, max_hyperplanes)
    b = random_kernel_matrix(rng, rank, size, gaussian)
    a = kernel_basis(b, integral=False)
    return LinearIdeal.from_matrix(a.tolist())
