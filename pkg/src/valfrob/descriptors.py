"""JSON descriptor loading.

Valuation descriptors::

    {"kind": "monomial", "p": 2, "k": 1, "variables": ["x", "y"],
     "group": {"kind": "lex", "rank": 2},
     "weights": {"x": [1, 0], "y": [0, 1]},
     "parameters": ["x", "y"], "residue_vars": [],
     "monomialization": {"map": {"x": "..."}, "valuation": {...monomial...}}}
    {"kind": "gauss", "variant": "group_first" | "z_first", "p": 3, "level": 0}
    {"kind": "series", "p": 2, "seed": 20240607, "precision": 256}
    {"kind": "hahn", "p": 2}
    {"kind": "declared", "field": {...}, "group": {...}, "residue_field": {...}}

Fields are ``{"p", "k", "variables", "perfected", "perfect_variables", "label"}``.
Centers are ``{"dimension", "residue_field", "canonical"}``; ``{"canonical": true}``
alone asks for the canonical center of a monomial descriptor.
"""

from __future__ import annotations

import json
from pathlib import Path

from .classify import (
    CenterDescriptor,
    ValuationDescriptor,
    from_gauss,
    from_monomial,
    from_series,
    hahn_descriptor,
)
from .errors import DescriptorError
from .groups import group_from_json
from .poly import FieldDescriptor
from .series import DEFAULT_PRECISION, DEFAULT_SEED, SeriesEmbedding
from .valuations import GaussValuation, MonomialValuation


def _field(d) -> FieldDescriptor:
    try:
        return FieldDescriptor.from_json(d)
    except (KeyError, ValueError, TypeError) as exc:
        raise DescriptorError(f"bad field descriptor: {exc}") from None


def monomial_from_json(d) -> MonomialValuation:
    K = _field(d)
    G = group_from_json(d["group"], K.p)
    try:
        weights = {v: G.element(c) for v, c in d["weights"].items()}
    except KeyError as exc:
        raise DescriptorError(f"missing key {exc}") from None
    mono = None
    if "monomialization" in d:
        m = d["monomialization"]
        target = monomial_from_json(m["valuation"])
        mapping = {v: target.field.parse(str(e)) for v, e in m["map"].items()}
        mono = (mapping, target)
    return MonomialValuation(K, G, weights, parameters=d.get("parameters", ()),
                             residue_vars=d.get("residue_vars", ()), monomialization=mono,
                             name=d.get("name"))


def load_valuation(d: dict, seed: int | None = None, precision: int | None = None) -> ValuationDescriptor:
    """Build a ValuationDescriptor; ``seed``/``precision`` override series settings."""
    if not isinstance(d, dict) or "kind" not in d:
        raise DescriptorError("valuation descriptor must be an object with a 'kind'")
    kind = d["kind"]
    name = d.get("name")
    if kind == "monomial":
        return from_monomial(monomial_from_json(d), name, d)
    if kind == "gauss":
        w = GaussValuation(int(d["p"]), d.get("variant", "group_first"), int(d.get("level", 0)))
        return from_gauss(w, name, d)
    if kind == "series":
        s = int(d.get("seed", DEFAULT_SEED)) if seed is None else seed
        n = int(d.get("precision", DEFAULT_PRECISION)) if precision is None else precision
        E = SeriesEmbedding(int(d["p"]), s, n, variables=tuple(d.get("variables", ("x", "y"))))
        src = dict(d, seed=s, precision=n)
        return from_series(E, name, src)
    if kind == "hahn":
        return hahn_descriptor(int(d["p"]), name, d)
    if kind == "declared":
        K = _field(d["field"])
        G = group_from_json(d["group"], K.p)
        kappa = _field(d["residue_field"])
        return ValuationDescriptor("declared", K, G, kappa, None, name, d)
    raise DescriptorError(f"unknown valuation kind {kind!r}")


def load_center(d: dict | None, nu: ValuationDescriptor) -> CenterDescriptor | None:
    if d is None:
        return None
    if d.get("canonical") and "dimension" not in d:
        R = nu.canonical_center()
        if R is None:
            raise DescriptorError(f"no canonical center for a {nu.kind} descriptor")
        return R
    try:
        return CenterDescriptor(int(d["dimension"]), _field(d["residue_field"]),
                                bool(d.get("canonical", False)), d.get("label"))
    except KeyError as exc:
        raise DescriptorError(f"center descriptor missing {exc}") from None


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"{path}: invalid JSON ({exc})") from None
