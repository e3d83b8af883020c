"""Reproducible example gallery: descriptors with cited expectations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from . import engine
from .classify import classify
from .descriptors import load_center, load_valuation


@dataclass
class GalleryEntry:
    name: str
    summary: str
    valuation: dict
    center: dict | None
    expect: list


def load_gallery() -> list[GalleryEntry]:
    text = resources.files("valfrob").joinpath("data/gallery.json").read_text()
    data = json.loads(text)
    return [GalleryEntry(e["name"], e.get("summary", ""), e["valuation"], e.get("center"), e["expect"])
            for e in data["entries"]]


def _lookup(report: dict, path: str):
    cur = report
    for key in path.split("."):
        if not isinstance(cur, dict) or key not in cur:
            return _MISSING
        cur = cur[key]
    return cur


_MISSING = object()


def run_entry(entry: GalleryEntry, samples: int = 100, seed: int = 0) -> dict:
    """Evaluate every expectation; returns {name, passed, results, report}."""
    nu = load_valuation(entry.valuation)
    R = load_center(entry.center, nu)
    report = classify(nu, R, samples=samples, seed=seed).to_json()
    results = []
    for exp in entry.expect:
        if "path" in exp:
            what = exp["path"]
            got = _lookup(report, what)
        elif "eval" in exp:
            what = f"eval {exp['eval']}"
            got = engine.evaluate(nu, exp["eval"])["value"]
        elif "split" in exp:
            what = f"split {exp['split']}"
            got = engine.split(nu, exp["split"])["image"]
        else:
            raise ValueError(f"malformed expectation in {entry.name}: {exp}")
        got_j = None if got is _MISSING else got
        ok = got is not _MISSING and got == exp["equals"]
        results.append({"field": what, "expected": exp["equals"], "got": got_j, "passed": ok,
                        "source": exp.get("source"), "cite": exp.get("cite")})
    return {"name": entry.name, "summary": entry.summary, "passed": all(r["passed"] for r in results),
            "results": results, "report": report}


def run_gallery(names=None, samples: int = 100, seed: int = 0) -> list[dict]:
    entries = load_gallery()
    if names:
        known = {e.name for e in entries}
        unknown = [n for n in names if n not in known]
        if unknown:
            raise KeyError(f"unknown gallery entries: {unknown}")
        entries = [e for e in entries if e.name in names]
    return [run_entry(e, samples=samples, seed=seed) for e in entries]
