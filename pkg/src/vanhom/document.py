"""Reading and writing annotated complexes as JSON documents.

The on-disk format is tagged ``vanhom-complex/1``: a list of cells (id,
dimension, signed boundary, optional collapse rate, optional label),
optional named face-closed cell sets, and an optional geometry block
giving truncated Puiseux coordinates for every vertex.  Cells may take
their rate directly from the ``rate`` field or have it derived from the
geometry; an explicit rate wins over geometry, with a warning.

Writing is canonical and byte-stable: cells sorted by id, keys sorted,
rates as exact fraction strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cells import Cell, CellComplex, CellSet, validate, vertex_support
from .puiseux import (INF, ExtRational, PuiseuxSeries, SeriesParseError,
                      format_series, parse_series)
from .thinness import GeometricComplex, simplex_rate

FORMAT_TAG = "vanhom-complex/1"


class DocumentError(ValueError):
    """The document does not meet the format contract."""


@dataclass
class ComplexDocument:
    """A loaded document: complex, rates, named cell sets."""

    complex: CellComplex
    rates: Dict[int, ExtRational]
    subcomplexes: Dict[str, CellSet] = field(default_factory=dict)
    name: Optional[str] = None
    warnings: List[str] = field(default_factory=list)


def _parse_rate(text) -> ExtRational:
    if text == "inf":
        return INF
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"bad rate {text!r}") from exc


def _format_rate(rate: ExtRational) -> str:
    return "inf" if rate is INF else str(rate)


def _cells_from_data(data: dict) -> CellComplex:
    cells = []
    for item in data.get("cells", []):
        boundary = tuple((int(k), int(f)) for k, f in item.get("boundary", []))
        cells.append(Cell(int(item["id"]), int(item["dim"]), boundary,
                          item.get("label")))
    return CellComplex(cells)


def _geometry_from_data(c: CellComplex, block: dict,
                        precision_cap) -> GeometricComplex:
    ambient = int(block["ambient_dim"])
    coords: Dict[int, Tuple[PuiseuxSeries, ...]] = {}
    for key, texts in block.get("vertices", {}).items():
        point = []
        for text in texts:
            s = parse_series(text)
            if precision_cap is not None:
                s = s.truncate(Fraction(precision_cap))
            point.append(s)
        coords[int(key)] = tuple(point)
    return GeometricComplex(ambient_dim=ambient, vertices=coords,
                            simplices=[])


def document_problems(data: dict, precision_cap=None) -> List[str]:
    """Everything wrong with a document, without raising.

    Covers the format tag, cell structure, the complex laws, rate syntax,
    geometry coverage and the face-closure of declared subcomplexes.
    """
    problems = []
    if data.get("format") != FORMAT_TAG:
        problems.append(f"format tag must be {FORMAT_TAG!r}")
    if not isinstance(data.get("cells"), list):
        problems.append("missing cell list")
        return problems
    try:
        c = _cells_from_data(data)
    except (KeyError, TypeError, ValueError) as exc:
        problems.append(f"malformed cells: {exc}")
        return problems
    report = validate(c)
    problems.extend(report.problems)

    rated = set()
    for item in data["cells"]:
        cid = int(item["id"])
        if "rate" in item:
            if c.cell(cid).dim == 0:
                problems.append(f"vertex {cid} must not carry a rate")
                continue
            try:
                _parse_rate(item["rate"])
                rated.add(cid)
            except DocumentError as exc:
                problems.append(str(exc))

    geometry = None
    if "geometry" in data:
        try:
            geometry = _geometry_from_data(c, data["geometry"], precision_cap)
        except (KeyError, TypeError, ValueError, SeriesParseError) as exc:
            problems.append(f"bad geometry: {exc}")
        if geometry is not None:
            for cell in c.cells_of_dim(0):
                if cell.id not in geometry.vertices:
                    problems.append(f"vertex {cell.id} has no coordinates")

    for cell in c.cells():
        if cell.dim == 0 or cell.id in rated:
            continue
        if geometry is None:
            problems.append(f"cell {cell.id} has no rate and no geometry")
            continue
        support = vertex_support(c, cell.id)
        if len(support) != cell.dim + 1:
            problems.append(
                f"cell {cell.id} is not a simplex; cannot rate it from geometry")
        elif not all(vid in geometry.vertices for vid in support):
            problems.append(f"cell {cell.id} has vertices without coordinates")

    for name, ids in data.get("subcomplexes", {}).items():
        ids = [int(i) for i in ids]
        unknown = [i for i in ids if i not in c]
        if unknown:
            problems.append(f"subcomplex {name!r}: unknown cells {unknown}")
        elif not c.is_face_closed(frozenset(ids)):
            problems.append(f"subcomplex {name!r} is not closed under faces")
    return problems


def load_document(data: dict, precision_cap=None) -> ComplexDocument:
    """Build the annotated complex a document describes.

    Structural problems raise DocumentError (a subcomplex that is not
    face-closed is only a warning here; using it downstream fails).  Rates
    missing from the cells are derived from the geometry; deriving can
    raise IndeterminateAtPrecision or DegenerateSimplex.
    """
    problems = document_problems(data, precision_cap)
    fatal = [p for p in problems if "closed under faces" not in p]
    if fatal:
        raise DocumentError("; ".join(fatal))
    c = _cells_from_data(data)
    warnings = []
    geometry = None
    if "geometry" in data:
        geometry = _geometry_from_data(c, data["geometry"], precision_cap)
    rates: Dict[int, ExtRational] = {}
    for item in sorted(data["cells"], key=lambda i: int(i["id"])):
        cid = int(item["id"])
        if c.cell(cid).dim == 0:
            continue
        if "rate" in item:
            rates[cid] = _parse_rate(item["rate"])
            if geometry is not None:
                warnings.append(
                    f"cell {cid}: explicit rate overrides geometry")
        else:
            support = sorted(vertex_support(c, cid))
            rates[cid] = simplex_rate(geometry, support)
    subcomplexes = {name: frozenset(int(i) for i in ids)
                    for name, ids in data.get("subcomplexes", {}).items()}
    return ComplexDocument(complex=c, rates=rates, subcomplexes=subcomplexes,
                           name=data.get("name"), warnings=warnings)


def document_dict(c: CellComplex, rates: Dict[int, ExtRational],
                  subcomplexes: Optional[Dict[str, CellSet]] = None,
                  name: Optional[str] = None,
                  geometry: Optional[GeometricComplex] = None) -> dict:
    """The canonical JSON-ready form of an annotated complex."""
    cells = []
    for cell in c.cells():
        item: dict = {"id": cell.id, "dim": cell.dim,
                      "boundary": [[k, f] for k, f in cell.boundary]}
        if cell.id in rates:
            item["rate"] = _format_rate(rates[cell.id])
        if cell.label is not None:
            item["label"] = cell.label
        cells.append(item)
    out: dict = {"format": FORMAT_TAG, "cells": cells}
    if name is not None:
        out["name"] = name
    if subcomplexes:
        out["subcomplexes"] = {key: sorted(ids)
                               for key, ids in sorted(subcomplexes.items())}
    if geometry is not None:
        out["geometry"] = {
            "ambient_dim": geometry.ambient_dim,
            "vertices": {str(vid): [format_series(s) for s in point]
                         for vid, point in sorted(geometry.vertices.items())}}
    return out


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
