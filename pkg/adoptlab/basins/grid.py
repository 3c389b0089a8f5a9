# adoptlab/basins/grid.py

from typing import Tuple
import numpy as np
import logging

logger = logging.getLogger('adoptlab.basins.grid')


class SimplexGridGeneration:
    """
    Barycentric lattice over the simplex.

    Points are xG = i/res, xP = j/res for i + j <= res with xR = 1 − xG − xP,
    boundary included. The lattice is triangulated into res² congruent
    triangles; each point is weighted by a third of its incident triangles,
    which gives area fractions that sum to one exactly.
    """

    def __init__(self, resolution: int) -> None:
        if resolution < 1:
            raise ValueError(f"resolution must be >= 1, got {resolution}")
        logger.debug(f"Initializing SimplexGridGeneration with resolution {resolution}.")
        self.resolution = resolution

    def indices(self) -> Tuple[np.ndarray, np.ndarray]:
        """Integer lattice coordinates (i, j), ordered by i then j."""
        res = self.resolution
        ii, jj = np.meshgrid(np.arange(res + 1), np.arange(res + 1), indexing="ij")
        mask = ii + jj <= res
        return ii[mask], jj[mask]

    def points(self) -> np.ndarray:
        """(N, 3) barycentric coordinates of the lattice."""
        i, j = self.indices()
        xG = i / self.resolution
        xP = j / self.resolution
        xR = np.clip(1.0 - xG - xP, 0.0, None)
        return np.column_stack((xG, xP, xR))

    def _lookup(self) -> np.ndarray:
        res = self.resolution
        i, j = self.indices()
        table = np.full((res + 1, res + 1), -1, dtype=int)
        table[i, j] = np.arange(i.size)
        return table

    def _triangles(self) -> np.ndarray:
        res = self.resolution
        table = self._lookup()
        i, j = self.indices()
        lower = i + j <= res - 1
        upper = i + j <= res - 2
        li, lj = i[lower], j[lower]
        ui, uj = i[upper], j[upper]
        tri_lower = np.column_stack((table[li, lj], table[li + 1, lj], table[li, lj + 1]))
        tri_upper = np.column_stack((table[ui + 1, uj], table[ui, uj + 1], table[ui + 1, uj + 1]))
        return np.vstack((tri_lower, tri_upper))

    def weights(self) -> np.ndarray:
        """Area weight of each lattice point; sums to 1."""
        counts = np.bincount(self._triangles().ravel(), minlength=self.indices()[0].size)
        return counts / (3.0 * self.resolution ** 2)

    def neighbours(self) -> np.ndarray:
        """(M, 2) index pairs of lattice points sharing a triangle edge."""
        tri = self._triangles()
        pairs = np.vstack((tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [0, 2]]))
        pairs = np.sort(pairs, axis=1)
        return np.unique(pairs, axis=0)

    def edge_gp(self) -> np.ndarray:
        """Indices of points on the G–P edge (xR = 0), ordered by increasing xG."""
        i, j = self.indices()
        on_edge = np.flatnonzero(i + j == self.resolution)
        return on_edge[np.argsort(i[on_edge])]
