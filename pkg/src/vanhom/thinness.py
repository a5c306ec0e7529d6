"""Collapse rates, thin cells, and the thinness filtration.

A rate annotation assigns each positive-dimensional cell the exponent of
its shrink speed: a cell of rate s has diameter on the order of T^s.  A
cell is thin for a velocity when its rate lies inside the velocity's cut;
vertices are zero-dimensional and never thin.

Rates can be given directly or derived from coordinates: for a simplex
embedded over the Puiseux field, the edge-difference matrix has a chain of
valuations delta_1 <= minors ... and the successive differences
nu_i = delta_i - delta_(i-1) measure shrinking per dimension.  The last
difference, the rate of the thinnest direction, is the simplex rate.  The
minors are expanded exactly; cancellation between terms is detected, never
estimated from leading exponents.

The filtration of a complex at velocity v puts into level j every cell of
dimension below j together with the thin cells of dimension exactly j.
Level 0 is empty and level dim+1 is everything; vanishing homology reads
off consecutive levels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .cells import Cell, CellComplex, CellSet, InvalidComplex, SimplicialBuilder
from .puiseux import (INF, ExtRational, IndeterminateAtPrecision, PuiseuxSeries,
                      Velocity, series)

RateAnnotation = Mapping[int, ExtRational]


class MissingRate(KeyError):
    """A positive-dimensional cell has no rate annotation."""


class DegenerateSimplex(ValueError):
    """Simplex vertices span less than the simplex dimension."""


def rate_of(c: CellComplex, a: RateAnnotation, cid: int) -> ExtRational:
    cell = c.cell(cid)
    if cell.dim == 0:
        raise ValueError(f"vertex {cid} carries no rate")
    try:
        return a[cid]
    except KeyError:
        raise MissingRate(f"cell {cid} (dim {cell.dim}) has no rate") from None


def is_thin(c: CellComplex, a: RateAnnotation, cid: int, v: Velocity) -> bool:
    """Whether the cell collapses at least as fast as the velocity cut.

    Vertices are never thin, whatever the velocity.
    """
    if c.cell(cid).dim == 0:
        return False
    return v.contains_rate(rate_of(c, a, cid))


def critical_rates(c: CellComplex, a: RateAnnotation) -> List[Fraction]:
    """Distinct finite rates present in the complex, ascending."""
    rates = {rate_of(c, a, cell.id)
             for cell in c.cells() if cell.dim >= 1}
    return sorted(r for r in rates if r is not INF)


@dataclass(frozen=True)
class Filtration:
    """Nested cell sets X_0 = empty subset ... subset X_(d+1) = everything."""

    velocity: Velocity
    levels: Tuple[CellSet, ...]

    def __len__(self):
        return len(self.levels)

    def level(self, j: int) -> CellSet:
        return self.levels[j]


def filtration(c: CellComplex, a: RateAnnotation, v: Velocity) -> Filtration:
    """Level j keeps all cells of dim < j plus the thin cells of dim j.

    Cells of dimension above j never enter level j, thin or not.
    """
    d = c.dim
    levels = []
    for j in range(d + 2):
        keep = set()
        for cell in c.cells():
            if cell.dim < j:
                keep.add(cell.id)
            elif cell.dim == j and is_thin(c, a, cell.id, v):
                keep.add(cell.id)
        levels.append(frozenset(keep))
    return Filtration(velocity=v, levels=tuple(levels))


# -- rates from coordinates ----------------------------------------------


@dataclass
class GeometricComplex:
    """A simplicial complex with Puiseux-series vertex coordinates.

    vertices maps vertex id to a coordinate tuple (all of length
    ambient_dim); simplices are vertex-id tuples of dimension >= 1, closed
    under faces, orientation given by tuple order.
    """

    ambient_dim: int
    vertices: Dict[int, Tuple[PuiseuxSeries, ...]]
    simplices: List[Tuple[int, ...]]

    def check(self):
        keyed = set()
        for vid, point in self.vertices.items():
            if len(point) != self.ambient_dim:
                raise InvalidComplex(
                    f"vertex {vid}: expected {self.ambient_dim} coordinates")
        for simplex in self.simplices:
            simplex = tuple(simplex)
            if len(set(simplex)) != len(simplex):
                raise InvalidComplex(f"repeated vertex in {simplex}")
            if len(simplex) < 2:
                raise InvalidComplex(f"{simplex}: need dimension >= 1")
            for vid in simplex:
                if vid not in self.vertices:
                    raise InvalidComplex(f"unknown vertex {vid} in {simplex}")
            keyed.add(frozenset(simplex))
        for simplex in self.simplices:
            if len(simplex) < 3:
                continue
            for i in range(len(simplex)):
                face = frozenset(simplex[:i] + simplex[i + 1:])
                if face not in keyed:
                    raise InvalidComplex(
                        f"missing face {sorted(face)} of {tuple(simplex)}")


def _det(matrix: Sequence[Sequence[PuiseuxSeries]]) -> PuiseuxSeries:
    # exact Laplace expansion along the first row; sizes stay tiny
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total: Optional[PuiseuxSeries] = None
    for k in range(n):
        minor = [[row[j] for j in range(n) if j != k] for row in matrix[1:]]
        piece = matrix[0][k] * _det(minor)
        if k % 2:
            piece = -piece
        total = piece if total is None else total + piece
    return total


def invariant_factor_valuations(
        matrix: Sequence[Sequence[PuiseuxSeries]]) -> List[ExtRational]:
    """Successive minor-valuation differences nu_1..nu_r of a matrix.

    delta_i is the smallest valuation of an i-by-i minor determinant,
    delta_0 = 0, and nu_i = delta_i - delta_(i-1); r = min(#rows, #cols).
    Once every minor of some size cancels to exactly zero, the remaining
    entries are infinite.  A minor whose leading term is hidden by series
    truncation raises IndeterminateAtPrecision.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    r = min(nrows, ncols)
    out: List[ExtRational] = []
    prev: ExtRational = Fraction(0)
    for size in range(1, r + 1):
        best: ExtRational = INF
        pending_floor: ExtRational = INF
        for rows in itertools.combinations(range(nrows), size):
            for cols in itertools.combinations(range(ncols), size):
                det = _det([[matrix[i][j] for j in cols] for i in rows])
                try:
                    val = det.valuation()
                except IndeterminateAtPrecision:
                    # the hidden leading term sits at or past the precision
                    pending_floor = min(pending_floor, det.precision)
                    continue
                if val < best:
                    best = val
        if pending_floor is not INF and not best < pending_floor:
            raise IndeterminateAtPrecision(
                f"a size-{size} minor is undetermined below its truncation "
                f"and could dominate")
        if best is INF:
            out.extend([INF] * (r - size + 1))
            return out
        out.append(best - prev)
        prev = best
    return out


def simplex_rate(g: GeometricComplex, simplex: Sequence[int]) -> Fraction:
    """Collapse rate of one embedded simplex: the last nu of its edge matrix.

    Rows are the coordinate differences to the first vertex.  Degenerate
    simplices (affinely dependent vertices) are refused.
    """
    simplex = tuple(simplex)
    base = g.vertices[simplex[0]]
    rows = []
    for vid in simplex[1:]:
        point = g.vertices[vid]
        rows.append([point[k] - base[k] for k in range(g.ambient_dim)])
    if len(rows) > g.ambient_dim:
        raise DegenerateSimplex(
            f"{simplex}: dimension exceeds the ambient space")
    nus = invariant_factor_valuations(rows)
    rate = nus[-1]
    if rate is INF:
        raise DegenerateSimplex(f"{simplex}: vertices are affinely dependent")
    return rate


def annotate_geometric(
        g: GeometricComplex) -> Tuple[CellComplex, Dict[int, ExtRational]]:
    """Build the cell complex of an embedded one and derive all rates.

    Vertices keep their ids; higher simplices get fresh ids in order of
    (dimension, sorted vertex tuple).  Boundary signs respect the given
    tuple orientations.
    """
    g.check()
    b = SimplicialBuilder()
    for vid in sorted(g.vertices):
        b.add_vertex(vid)
    ordered = sorted((tuple(s) for s in g.simplices),
                     key=lambda s: (len(s), tuple(sorted(s))))
    for simplex in ordered:
        b.add_simplex(simplex, rate=simplex_rate(g, simplex))
    return b.complex(), dict(b.rates)
