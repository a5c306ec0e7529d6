"""Exact homology of cell complexes over the rationals.

Everything here is exact: matrices and chains carry Fraction entries and
ranks come from fraction-free-enough Gaussian elimination, so a Betti
number is never a numerical estimate.  Chains are sparse dicts keyed by
cell id; subspaces keep a reduced echelon basis, which makes dimensions,
sums, intersections and preimages cheap and deterministic.

The two entry points used by the vanishing layer are :func:`betti` (the
ordinary Betti number of a face-closed cell set) and :func:`image_betti`
(the rank of the map induced on homology by including one cell set into a
larger one).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .cells import CellComplex, CellSet, NotFaceClosed

Chain = Dict[int, Fraction]


def chain_boundary(c: CellComplex, chain: Chain) -> Chain:
    """Apply the boundary operator to a sparse chain."""
    out: Chain = {}
    for cid, coeff in chain.items():
        for k, face in c.cell(cid).boundary:
            new = out.get(face, Fraction(0)) + coeff * k
            if new:
                out[face] = new
            else:
                out.pop(face, None)
    return out


def restrict_chain(chain: Chain, keep: CellSet) -> Chain:
    """Project a chain onto the coordinates of a cell set."""
    return {cid: coeff for cid, coeff in chain.items() if cid in keep}


def _add_scaled(target: Chain, coeff: Fraction, source: Chain) -> Chain:
    out = dict(target)
    for key, value in source.items():
        new = out.get(key, Fraction(0)) + coeff * value
        if new:
            out[key] = new
        else:
            out.pop(key, None)
    return out


class _Eliminator:
    """Incremental reduced echelon form over sparse Fraction vectors.

    Rows are kept fully reduced with pivot coefficient one, ordered by
    pivot key; combination tracking ties every row back to the input
    vectors, which yields kernels and coordinate solutions for free.
    """

    def __init__(self, track: bool = False):
        self.rows: List[Tuple[int, Chain, Optional[Chain]]] = []
        self.track = track
        self.count = 0

    def _reduce(self, vec: Chain, combo: Optional[Chain]):
        for pivot, basis_vec, basis_combo in self.rows:
            coeff = vec.get(pivot)
            if coeff:
                vec = _add_scaled(vec, -coeff, basis_vec)
                if combo is not None:
                    combo = _add_scaled(combo, -coeff, basis_combo)
        return vec, combo

    def add(self, vec: Chain) -> Optional[Chain]:
        """Insert a vector; returns its input combination if dependent.

        The returned dict maps input indices to coefficients of a vanishing
        combination (with this vector's own index included), or None when
        the vector was independent and the rank grew.
        """
        index = self.count
        self.count += 1
        combo = {index: Fraction(1)} if self.track else None
        vec, combo = self._reduce(dict(vec), combo)
        if not vec:
            return combo if self.track else {}
        pivot = min(vec)
        scale = Fraction(1) / vec[pivot]
        vec = {k: v * scale for k, v in vec.items()}
        if combo is not None:
            combo = {k: v * scale for k, v in combo.items()}
        updated = []
        for p, bvec, bcombo in self.rows:
            c = bvec.get(pivot)
            if c:
                bvec = _add_scaled(bvec, -c, vec)
                if bcombo is not None:
                    bcombo = _add_scaled(bcombo, -c, combo)
            updated.append((p, bvec, bcombo))
        updated.append((pivot, vec, combo))
        updated.sort(key=lambda row: row[0])
        self.rows = updated
        return None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> List[Chain]:
        return [vec for _, vec, _ in self.rows]

    def residual(self, vec: Chain) -> Chain:
        reduced, _ = self._reduce(dict(vec), None)
        return reduced

    def solve(self, target: Chain) -> Optional[List[Fraction]]:
        """Coefficients writing target in the inserted vectors, or None."""
        if not self.track:
            raise ValueError("eliminator built without combination tracking")
        vec, combo = dict(target), {}
        for pivot, basis_vec, basis_combo in self.rows:
            coeff = vec.get(pivot)
            if coeff:
                vec = _add_scaled(vec, -coeff, basis_vec)
                combo = _add_scaled(combo, coeff, basis_combo)
        if vec:
            return None
        return [combo.get(i, Fraction(0)) for i in range(self.count)]


def rank_of(vectors: Iterable[Chain]) -> int:
    elim = _Eliminator()
    for vec in vectors:
        elim.add(vec)
    return elim.rank


def kernel_basis(vectors: Sequence[Chain]) -> List[Chain]:
    """Basis of vanishing combinations of the given vectors.

    Each result maps input index to coefficient; results are independent.
    """
    elim = _Eliminator(track=True)
    out = []
    for vec in vectors:
        combo = elim.add(vec)
        if combo is not None:
            out.append(combo)
    return out


class Subspace:
    """A subspace of a chain space, held as a reduced echelon basis."""

    def __init__(self, vectors: Iterable[Chain] = ()):
        self._elim = _Eliminator()
        for vec in vectors:
            self._elim.add(vec)

    @property
    def dim(self) -> int:
        return self._elim.rank

    def basis(self) -> List[Chain]:
        return self._elim.basis()

    def contains(self, vec: Chain) -> bool:
        return not self._elim.residual(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.basis() + other.basis())

    def intersection(self, other: "Subspace") -> "Subspace":
        mine, theirs = self.basis(), other.basis()
        combos = kernel_basis(mine + theirs)
        vectors = []
        for combo in combos:
            vec: Chain = {}
            for idx, coeff in combo.items():
                if idx < len(mine):
                    vec = _add_scaled(vec, coeff, mine[idx])
            vectors.append(vec)
        return Subspace(vectors)

    def map_kernel(self, f: Callable[[Chain], Chain]) -> "Subspace":
        """Kernel of a linear map restricted to this subspace."""
        basis = self.basis()
        combos = kernel_basis([f(v) for v in basis])
        return Subspace(_combine(basis, combos))

    def map_preimage(self, f: Callable[[Chain], Chain],
                     target: "Subspace") -> "Subspace":
        """The part of this subspace that f sends into target."""
        basis = self.basis()
        images = [f(v) for v in basis]
        combos = kernel_basis(images + target.basis())
        vectors = []
        for combo in combos:
            vec: Chain = {}
            for idx, coeff in combo.items():
                if idx < len(basis):
                    vec = _add_scaled(vec, coeff, basis[idx])
            vectors.append(vec)
        return Subspace(vectors)


def _combine(basis: Sequence[Chain], combos: Iterable[Chain]) -> List[Chain]:
    out = []
    for combo in combos:
        vec: Chain = {}
        for idx, coeff in combo.items():
            vec = _add_scaled(vec, coeff, basis[idx])
        out.append(vec)
    return out


def unit_chains(ids: Iterable[int]) -> List[Chain]:
    return [{cid: Fraction(1)} for cid in sorted(ids)]


# -- matrices ------------------------------------------------------------


class RationalMatrix:
    """A matrix over the rationals with explicit row and column keys."""

    def __init__(self, rows: Sequence[int], cols: Sequence[int],
                 entries: Dict[Tuple[int, int], Fraction]):
        self.rows = tuple(rows)
        self.cols = tuple(cols)
        self.entries = {k: Fraction(v) for k, v in entries.items() if v != 0}

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def entry(self, row: int, col: int) -> Fraction:
        return self.entries.get((row, col), Fraction(0))

    def column(self, col: int) -> Chain:
        return {r: v for (r, c), v in self.entries.items() if c == col}

    def columns(self) -> List[Chain]:
        out: Dict[int, Chain] = {c: {} for c in self.cols}
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return [out[c] for c in self.cols]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows,
                              {(c, r): v for (r, c), v in self.entries.items()})

    def rank(self) -> int:
        return rank_of(self.columns())

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)


def boundary_matrix(c: CellComplex, j: int,
                    domain: Optional[CellSet] = None,
                    codomain: Optional[CellSet] = None,
                    project: bool = False) -> RationalMatrix:
    """Degree-j boundary matrix, columns indexed by j-cells.

    With ``project=True`` entries whose face falls outside the codomain are
    dropped (the boundary followed by projection onto the codomain's
    span); otherwise such an entry is an error.
    """
    domain = frozenset(domain) if domain is not None else c.cell_ids()
    codomain = frozenset(codomain) if codomain is not None else c.cell_ids()
    cols = [cid for cid in sorted(domain) if c.cell(cid).dim == j]
    rows = [cid for cid in sorted(codomain) if c.cell(cid).dim == j - 1]
    rowset = frozenset(rows)
    entries: Dict[Tuple[int, int], Fraction] = {}
    for cid in cols:
        for k, face in c.cell(cid).boundary:
            if face not in rowset:
                if project:
                    continue
                raise NotFaceClosed(
                    f"face {face} of cell {cid} is outside the codomain")
            entries[(face, cid)] = (entries.get((face, cid), Fraction(0))
                                    + Fraction(k))
    return RationalMatrix(rows, cols, entries)


def rank(m: RationalMatrix) -> int:
    return m.rank()


# -- Betti numbers -------------------------------------------------------


def _require_face_closed(c: CellComplex, s: CellSet, what: str):
    if not c.is_face_closed(s):
        raise NotFaceClosed(f"{what} is not closed under faces")


def cycle_space(c: CellComplex, s: CellSet, j: int) -> Subspace:
    """Cycles of degree j supported on a face-closed cell set."""
    ids = [cid for cid in sorted(s) if c.cell(cid).dim == j]
    if j == 0:
        return Subspace(unit_chains(ids))
    units = unit_chains(ids)
    combos = kernel_basis([chain_boundary(c, u) for u in units])
    return Subspace(_combine(units, combos))


def boundary_space(c: CellComplex, s: CellSet, j: int) -> Subspace:
    """Boundaries of degree j: images of the (j+1)-cells in the set."""
    above = [cid for cid in sorted(s) if c.cell(cid).dim == j + 1]
    return Subspace(chain_boundary(c, {cid: Fraction(1)}) for cid in above)


def betti(c: CellComplex, s: CellSet, j: int) -> int:
    """Ordinary rational Betti number of the subcomplex on s."""
    s = frozenset(s)
    _require_face_closed(c, s, "cell set")
    nj = sum(1 for cid in s if c.cell(cid).dim == j)
    rank_j = 0
    if j >= 1:
        rank_j = rank_of(chain_boundary(c, {cid: Fraction(1)})
                         for cid in sorted(s) if c.cell(cid).dim == j)
    rank_above = rank_of(chain_boundary(c, {cid: Fraction(1)})
                         for cid in sorted(s) if c.cell(cid).dim == j + 1)
    return nj - rank_j - rank_above


def image_betti(c: CellComplex, small: CellSet, big: CellSet, j: int) -> int:
    """Rank of the induced map on degree-j homology from small into big.

    Equals dim Z_j(small) minus the part of Z_j(small) that bounds in big;
    cycles of the smaller complex that merely bound in the larger one are
    quotiented away.
    """
    small, big = frozenset(small), frozenset(big)
    c.require_nested(small, big)
    _require_face_closed(c, small, "the smaller cell set")
    _require_face_closed(c, big, "the larger cell set")
    cycles = cycle_space(c, small, j)
    bounds = boundary_space(c, big, j)
    total = rank_of(cycles.basis() + bounds.basis())
    meet = cycles.dim + bounds.dim - total
    return cycles.dim - meet
