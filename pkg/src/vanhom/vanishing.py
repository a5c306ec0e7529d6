"""Vanishing homology of a rate-annotated complex, absolute and relative.

The degree-j vanishing homology at a velocity counts cycles that can be
carried on thin cells, up to boundaries of the ambient complex.  Two
independent computations are provided:

* the filtration route (:func:`vanishing_betti`): level j of the thinness
  filtration keeps everything below dimension j plus the thin j-cells, and
  the degree-j dimension is the rank of the map induced on ordinary
  homology by including level j into level j+1;

* the chain route (:func:`vanishing_betti_oracle`): work inside the chain
  subspaces spanned by thin cells, closed up by one round of boundaries,
  and take homology there.

Both must agree everywhere; the test suite leans on that.

The relative theory replaces the chain subspaces by their counterparts for
a pair (complex, subcomplex A): thin chains that are attached to A, the
relative cycle condition, and the induced long exact sequence connecting
the attached, absolute and relative groups.  Excision drops a set W from
the interior of A without changing the relative groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cells import CellComplex, CellSet, NotFaceClosed
from .homology import (Chain, Subspace, _Eliminator, chain_boundary,
                       image_betti, rank_of, restrict_chain, unit_chains)
from .puiseux import Velocity
from .thinness import RateAnnotation, critical_rates, filtration, is_thin


class InvalidExcision(ValueError):
    """The excised set is not removable: it must sit inside the
    subcomplex and contain every cell it is a face of."""


@dataclass(frozen=True)
class VanishingBettiTable:
    """Per-degree dimensions of vanishing homology at one velocity."""

    velocity: Velocity
    dims: Dict[int, int]
    euler: int

    def as_dict(self) -> dict:
        return {"velocity": str(self.velocity),
                "betti": {str(j): self.dims[j] for j in sorted(self.dims)},
                "euler": self.euler}


def _euler_from_dims(dims: Dict[int, int]) -> int:
    # degree 0 never contributes; the alternating sum starts in degree 1
    return sum((-1) ** j * dim for j, dim in dims.items() if j >= 1)


def vanishing_betti(c: CellComplex, a: RateAnnotation,
                    v: Velocity) -> VanishingBettiTable:
    """Vanishing homology dimensions via the thinness filtration."""
    d = c.dim
    if d < 0:
        return VanishingBettiTable(v, {0: 0}, 0)
    levels = filtration(c, a, v)
    dims = {j: image_betti(c, levels.level(j), levels.level(j + 1), j)
            for j in range(d + 1)}
    return VanishingBettiTable(v, dims, _euler_from_dims(dims))


def vanishing_euler(t: VanishingBettiTable) -> int:
    """Alternating sum of the positive-degree dimensions."""
    return _euler_from_dims(t.dims)


# -- chain route ---------------------------------------------------------


class ChainSubspaceComplex:
    """A chain complex carved out of a cell complex by chain subspaces.

    One subspace of the degree-j chain space per degree; the boundary
    operator must map each into the one below (checked, not assumed).
    """

    def __init__(self, c: CellComplex, spaces: Dict[int, Subspace]):
        self.complex = c
        self.spaces = dict(spaces)

    def space(self, j: int) -> Subspace:
        return self.spaces.get(j, Subspace())

    def assert_boundary_closed(self):
        for j, space in sorted(self.spaces.items()):
            if j < 1:
                continue
            below = self.space(j - 1)
            images = [chain_boundary(self.complex, vec)
                      for vec in space.basis()]
            if rank_of(below.basis() + images) != below.dim:
                raise AssertionError(
                    f"degree-{j} subspace is not closed under the boundary")

    def homology_dims(self) -> Dict[int, int]:
        """dim ker - dim im per degree, degrees 0..top."""
        top = max(self.spaces, default=-1)
        dims = {}
        for j in range(top + 1):
            space = self.space(j)
            out_rank = 0
            if j >= 1:
                out_rank = rank_of(chain_boundary(self.complex, vec)
                                   for vec in space.basis())
            in_rank = rank_of(chain_boundary(self.complex, vec)
                              for vec in self.space(j + 1).basis())
            dims[j] = space.dim - out_rank - in_rank
        return dims


def _thin_ids(c: CellComplex, a: RateAnnotation, v: Velocity,
              j: int) -> List[int]:
    return [cell.id for cell in c.cells_of_dim(j)
            if is_thin(c, a, cell.id, v)]


def thin_chain_complex(c: CellComplex, a: RateAnnotation,
                       v: Velocity) -> ChainSubspaceComplex:
    """Spans of thin cells, closed up by boundaries from one degree above.

    Degree j holds the chains on thin j-cells together with the boundaries
    of chains on thin (j+1)-cells; its homology is the vanishing homology.
    """
    d = c.dim
    spaces = {}
    for j in range(d + 1):
        vectors = unit_chains(_thin_ids(c, a, v, j))
        vectors += [chain_boundary(c, u)
                    for u in unit_chains(_thin_ids(c, a, v, j + 1))]
        spaces[j] = Subspace(vectors)
    return ChainSubspaceComplex(c, spaces)


def vanishing_betti_oracle(c: CellComplex, a: RateAnnotation,
                           v: Velocity) -> VanishingBettiTable:
    """Vanishing homology dimensions via the thin chain subcomplex."""
    if c.dim < 0:
        return VanishingBettiTable(v, {0: 0}, 0)
    prime = thin_chain_complex(c, a, v)
    prime.assert_boundary_closed()
    dims = prime.homology_dims()
    return VanishingBettiTable(v, dims, _euler_from_dims(dims))


# -- velocity sweep ------------------------------------------------------


@dataclass(frozen=True)
class SweepTable:
    """Vanishing dimensions as a step function of the velocity threshold.

    Thresholds run through non-strict velocities only.  breakpoints are the
    distinct finite rates; interval i covers thresholds in
    (breakpoints[i-1], breakpoints[i]] (the first interval is unbounded
    below, the last one unbounded above).
    """

    breakpoints: Tuple[Fraction, ...]
    dims: Dict[int, Tuple[int, ...]]

    def value(self, degree: int, threshold: Fraction) -> int:
        row = self.dims[degree]
        for i, bp in enumerate(self.breakpoints):
            if threshold <= bp:
                return row[i]
        return row[-1]

    def intervals(self, degree: int) -> List[Tuple[Optional[Fraction],
                                                   Optional[Fraction], int]]:
        row = self.dims[degree]
        edges: List[Optional[Fraction]] = [None, *self.breakpoints, None]
        return [(edges[i], edges[i + 1], row[i]) for i in range(len(row))]


def sweep(c: CellComplex, a: RateAnnotation,
          degrees: Optional[Sequence[int]] = None) -> SweepTable:
    """Evaluate the vanishing dimensions across all velocity thresholds.

    The dimensions can only change where the threshold crosses a rate that
    is present, so each interval between consecutive rates is sampled once
    at its right endpoint; interval interiors and the unbounded ends are
    probed at extra points and checked for agreement.
    """
    bps = critical_rates(c, a)
    if degrees is None:
        degrees = range(max(c.dim, 0) + 1)
    degrees = list(degrees)

    def table_at(threshold) -> Dict[int, int]:
        t = vanishing_betti(c, a, Velocity(Fraction(threshold)))
        return {j: t.dims.get(j, 0) for j in degrees}

    if not bps:
        flat = table_at(0)
        return SweepTable((), {j: (flat[j],) for j in degrees})

    values = [table_at(bp) for bp in bps]
    values.append(table_at(bps[-1] + 1))
    # probes that must agree with the value of their interval
    probes = [(0, table_at(bps[0] - 1)),
              (len(bps), table_at(bps[-1] + 2))]
    for i in range(1, len(bps)):
        mid = (bps[i - 1] + bps[i]) / 2
        probes.append((i, table_at(mid)))
    for idx, probe in probes:
        if probe != values[idx]:
            raise AssertionError(
                "vanishing dimensions vary inside a sweep interval")
    return SweepTable(tuple(bps),
                      {j: tuple(row[j] for row in values) for j in degrees})


# -- pairs ---------------------------------------------------------------


@dataclass(frozen=True)
class PairReport:
    """Vanishing homology of a pair (complex, subcomplex).

    absolute: the whole complex; relative: the pair; attached: the chain
    complex of thin chains attached to the subcomplex, the third player in
    the long exact sequence.  exact records whether that sequence closed.
    """

    velocity: Velocity
    absolute: Dict[int, int]
    relative: Dict[int, int]
    attached: Dict[int, int]
    exact: bool

    def as_dict(self) -> dict:
        def tab(d):
            return {str(j): d[j] for j in sorted(d)}
        return {"velocity": str(self.velocity),
                "absolute": tab(self.absolute),
                "relative": tab(self.relative),
                "attached": tab(self.attached),
                "exact": self.exact}


@dataclass(frozen=True)
class LesNode:
    """Exactness record at one spot of the long exact sequence."""

    degree: int
    space: str
    dim: int
    rank_in: int
    rank_out: int
    ok: bool


@dataclass(frozen=True)
class LesReport:
    velocity: Velocity
    nodes: List[LesNode]
    exact: bool

    def as_dict(self) -> dict:
        return {"velocity": str(self.velocity),
                "exact": self.exact,
                "nodes": [{"degree": n.degree, "space": n.space,
                           "dim": n.dim, "rank_in": n.rank_in,
                           "rank_out": n.rank_out, "ok": n.ok}
                          for n in self.nodes]}


def attached_chain_complex(c: CellComplex, a: RateAnnotation, sub: CellSet,
                           v: Velocity) -> ChainSubspaceComplex:
    """Thin chains attached to a subcomplex.

    Degree j holds the thin j-cells lying in the subcomplex, plus the
    subcomplex-projected boundaries of thin (j+1)-chains whose boundary
    already vanishes on every thick j-cell outside the subcomplex.  This is
    the piece of the ambient thin complex that the pair quotients away.
    """
    sub = frozenset(sub)
    if not c.is_face_closed(sub):
        raise NotFaceClosed("subcomplex is not closed under faces")
    pc = _PairChains(c, a, sub, v)
    return ChainSubspaceComplex(c, {j: pc.attached[j] for j in pc.degrees})


class _PairChains:
    """Chain subspaces for a pair, shared by the relative computations."""

    def __init__(self, c: CellComplex, a: RateAnnotation, sub: CellSet,
                 v: Velocity):
        self.complex = c
        self.sub = frozenset(sub)
        d = max(c.dim, 0)
        self.degrees = range(d + 1)
        thin: Dict[int, List[int]] = {
            j: _thin_ids(c, a, v, j) for j in range(d + 2)}
        self.bnd_thin: Dict[int, List[Chain]] = {
            j: [chain_boundary(c, u) for u in unit_chains(thin[j])]
            for j in range(d + 2)}
        # chains on thin cells whose boundary misses the thick cells
        # outside the subcomplex; their projected boundaries are what the
        # subcomplex can absorb
        relfree: Dict[int, Subspace] = {}
        for j in range(d + 2):
            bad = frozenset(
                cell.id for cell in c.cells_of_dim(j - 1)
                if cell.id not in self.sub and not is_thin(c, a, cell.id, v))
            units = unit_chains(thin[j])
            space = Subspace(units)
            relfree[j] = space.map_kernel(
                lambda x, bad=bad: restrict_chain(chain_boundary(c, x), bad))
        self.prime: Dict[int, Subspace] = {}
        self.attached: Dict[int, Subspace] = {}
        self.zrel: Dict[int, Subspace] = {}
        self.rel_bounds: Dict[int, Subspace] = {}
        for j in self.degrees:
            self.prime[j] = Subspace(unit_chains(thin[j])
                                     + self.bnd_thin[j + 1])
        for j in self.degrees:
            in_sub = [{cid: Fraction(1)} for cid in thin[j]
                      if cid in self.sub]
            projected = [restrict_chain(vec, self.sub)
                         for vec in (chain_boundary(c, b)
                                     for b in relfree[j + 1].basis())]
            self.attached[j] = Subspace(in_sub + projected)
        for j in self.degrees:
            target = self.attached.get(j - 1, Subspace())
            self.zrel[j] = self.prime[j].map_preimage(
                lambda x: chain_boundary(c, x), target)
            self.rel_bounds[j] = Subspace(self.bnd_thin[j + 1]) \
                + self.attached[j]

    def relative_dims(self) -> Dict[int, int]:
        out = {}
        for j in self.degrees:
            meet = self.rel_bounds[j].intersection(self.zrel[j])
            out[j] = self.zrel[j].dim - meet.dim
        return out


class _HomologyCoords:
    """Representatives and class coordinates for one homology degree."""

    def __init__(self, c: CellComplex, bounds: Subspace, cycles: Subspace):
        self._elim = _Eliminator(track=True)
        self.rep_positions: List[int] = []
        self.reps: List[Chain] = []
        for vec in bounds.basis():
            self._elim.add(vec)
        for vec in cycles.basis():
            position = self._elim.count
            if self._elim.add(vec) is None:
                self.rep_positions.append(position)
                self.reps.append(vec)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, cycle: Chain) -> List[Fraction]:
        solution = self._elim.solve(cycle)
        if solution is None:
            raise AssertionError("chain does not represent a class here")
        return [solution[p] for p in self.rep_positions]


def _matrix_rank(columns: List[List[Fraction]]) -> int:
    return rank_of({i: v for i, v in enumerate(col) if v}
                   for col in columns)


def _apply(columns: List[List[Fraction]], vector: List[Fraction],
           out_dim: int) -> List[Fraction]:
    out = [Fraction(0)] * out_dim
    for coeff, col in zip(vector, columns):
        if coeff:
            for i, v in enumerate(col):
                out[i] += coeff * v
    return out


class _PairComputation:
    """Everything about one pair at one velocity: dims, maps, exactness."""

    def __init__(self, c: CellComplex, a: RateAnnotation, sub: CellSet,
                 v: Velocity):
        self.velocity = v
        self.chains = pc = _PairChains(c, a, sub, v)
        ChainSubspaceComplex(c, pc.prime).assert_boundary_closed()
        ChainSubspaceComplex(c, pc.attached).assert_boundary_closed()

        def bd(x):
            return chain_boundary(c, x)

        self.attached_h: Dict[int, _HomologyCoords] = {}
        self.absolute_h: Dict[int, _HomologyCoords] = {}
        self.relative_h: Dict[int, _HomologyCoords] = {}
        for j in pc.degrees:
            att_bounds = Subspace(bd(vec)
                                  for vec in pc.attached.get(j + 1,
                                                             Subspace()).basis())
            self.attached_h[j] = _HomologyCoords(
                c, att_bounds, pc.attached[j].map_kernel(bd))
            self.absolute_h[j] = _HomologyCoords(
                c, Subspace(pc.bnd_thin[j + 1]), pc.prime[j].map_kernel(bd))
            self.relative_h[j] = _HomologyCoords(
                c, pc.rel_bounds[j], pc.zrel[j])
        # maps of the long sequence, as columns of class coordinates
        self.incl: Dict[int, List[List[Fraction]]] = {}
        self.quot: Dict[int, List[List[Fraction]]] = {}
        self.conn: Dict[int, List[List[Fraction]]] = {}
        for j in pc.degrees:
            self.incl[j] = [self.absolute_h[j].coords(rep)
                            for rep in self.attached_h[j].reps]
            self.quot[j] = [self.relative_h[j].coords(rep)
                            for rep in self.absolute_h[j].reps]
            if j >= 1:
                self.conn[j] = [self.attached_h[j - 1].coords(bd(rep))
                                for rep in self.relative_h[j].reps]
            else:
                self.conn[j] = [[] for _ in self.relative_h[j].reps]

    def dims(self, table: Dict[int, _HomologyCoords]) -> Dict[int, int]:
        return {j: table[j].dim for j in self.chains.degrees}

    def nodes(self) -> List[LesNode]:
        out = []
        degrees = list(self.chains.degrees)
        empty: List[List[Fraction]] = []
        for j in reversed(degrees):
            incoming = self.conn.get(j + 1, empty)
            out.append(self._node(j, "attached", self.attached_h[j].dim,
                                  incoming, self.incl[j]))
            out.append(self._node(j, "absolute", self.absolute_h[j].dim,
                                  self.incl[j], self.quot[j]))
            out.append(self._node(j, "relative", self.relative_h[j].dim,
                                  self.quot[j], self.conn[j]))
        return out

    def _node(self, degree: int, space: str, dim: int,
              incoming: List[List[Fraction]],
              outgoing: List[List[Fraction]]) -> LesNode:
        out_dim = len(outgoing[0]) if outgoing else 0
        composite_zero = all(
            not any(_apply(outgoing, col, out_dim)) for col in incoming)
        rank_in = _matrix_rank(incoming)
        rank_out = _matrix_rank(outgoing)
        ok = composite_zero and (rank_in + rank_out == dim)
        return LesNode(degree, space, dim, rank_in, rank_out, ok)


def relative_vanishing(c: CellComplex, a: RateAnnotation, sub: CellSet,
                       v: Velocity) -> PairReport:
    """Vanishing homology of the pair (complex, subcomplex) at a velocity.

    The subcomplex must be face-closed.  The report carries the absolute,
    relative and attached dimensions and whether the connecting long exact
    sequence checks out.
    """
    sub = frozenset(sub)
    if not c.is_face_closed(sub):
        raise NotFaceClosed("subcomplex is not closed under faces")
    comp = _PairComputation(c, a, sub, v)
    nodes = comp.nodes()
    return PairReport(velocity=v,
                      absolute=comp.dims(comp.absolute_h),
                      relative=comp.chains.relative_dims(),
                      attached=comp.dims(comp.attached_h),
                      exact=all(n.ok for n in nodes))


def les_check(c: CellComplex, a: RateAnnotation, sub: CellSet,
              v: Velocity) -> LesReport:
    """Build the pair's long exact sequence and verify exactness.

    At every node the composite of the two adjacent maps must vanish and
    the ranks must fill the middle dimension.
    """
    sub = frozenset(sub)
    if not c.is_face_closed(sub):
        raise NotFaceClosed("subcomplex is not closed under faces")
    comp = _PairComputation(c, a, sub, v)
    nodes = comp.nodes()
    return LesReport(velocity=v, nodes=nodes,
                     exact=all(n.ok for n in nodes))


# -- excision ------------------------------------------------------------


@dataclass(frozen=True)
class ExcisionReport:
    velocity: Velocity
    full: Dict[int, int]
    excised: Dict[int, int]
    equal: bool

    def as_dict(self) -> dict:
        def tab(d):
            return {str(j): d[j] for j in sorted(d)}
        return {"velocity": str(self.velocity), "full": tab(self.full),
                "excised": tab(self.excised), "equal": self.equal}


def excision_check(c: CellComplex, a: RateAnnotation, sub: CellSet,
                   cut: CellSet, v: Velocity) -> ExcisionReport:
    """Compare the pair's homology before and after removing a cut set.

    The cut must sit inside the subcomplex and be closed under cofaces
    (every cell having a face in the cut is itself in the cut), which keeps
    the remainder a complex and the shrunken subcomplex face-closed.
    """
    sub, cut = frozenset(sub), frozenset(cut)
    if not c.is_face_closed(sub):
        raise NotFaceClosed("subcomplex is not closed under faces")
    if not cut <= sub:
        raise InvalidExcision("cut set escapes the subcomplex")
    for cell in c.cells():
        if cell.id in cut:
            continue
        if any(face in cut for _, face in cell.boundary):
            raise InvalidExcision(
                f"cell {cell.id} is outside the cut but has a face in it")
    full = relative_vanishing(c, a, sub, v)
    rest = c.restrict(c.cell_ids() - cut)
    excised = relative_vanishing(rest, a, sub - cut, v)
    degrees = range(max(c.dim, 0) + 1)
    full_dims = {j: full.relative.get(j, 0) for j in degrees}
    excised_dims = {j: excised.relative.get(j, 0) for j in degrees}
    return ExcisionReport(velocity=v, full=full_dims, excised=excised_dims,
                          equal=full_dims == excised_dims)
