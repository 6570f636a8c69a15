"""Command-line front end.

    orbigw correlator <config.json>   graph-sum correlator (optionally oracle-verified)
    orbigw graphs <config.json>       enumeration only
    orbigw selfcheck [--full]         invariant suites

Configs and results are JSON.  Rationals are always strings "p/q"; floats
are rejected.  Every output document carries the package version.

Config keys::

    {
      "group": [3],                         # orders of the cyclic factors of G
      "action": [[1], [1], [1]],            # character of each coordinate of C^r
      "genus": 0,
      "insertions": [                        # ordered leaves
        {"a": 0, "tag": "phi_bar", "label": [1]},
        {"series": [{"a": 0, "tag": "unit_bar_h", "label": [1], "coeff": "1/2"}, ...]}
      ],
      "unordered": {"series": [...], "count": 2},      # optional
      "normalization": "equivariant",        # or "twisted"
      "truncation": {"order": 5},            # optional R-matrix order override
      "verify_oracle": false,
      "emit_graphs": false
    }
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from itertools import product
from math import factorial
from typing import Optional, Sequence

from gmpy2 import mpq

from orbigw import __version__
from orbigw._kernels import BACKEND
from orbigw.bgpotential import CLASS_TAGS, Insertion
from orbigw.exactalg import PuiseuxPoly, rational
from orbigw.graphsum import (
    EQUIVARIANT,
    NORMALIZATIONS,
    CorrelatorRequest,
    GraphSum,
    add_series,
    aut_order,
    enumerate_graphs,
    insertion_series,
)
from orbigw.groupchar import OrbifoldData, build_orbifold
from orbigw.qrroracle import twisted_potential
from orbigw.rmatrix import query_order
from orbigw.selfcheck import run_selfcheck


class ConfigError(ValueError):
    pass


def _require(cfg: dict, key: str, kind):
    if key not in cfg:
        raise ConfigError(f"missing key {key!r}")
    value = cfg[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise ConfigError(f"{key!r} must be {getattr(kind, '__name__', kind)}")
    return value


def _parse_term(orb: OrbifoldData, spec: dict, normalization: str):
    if not isinstance(spec, dict):
        raise ConfigError("insertion terms must be objects")
    a = spec.get("a")
    if not isinstance(a, int) or isinstance(a, bool) or a < 0:
        raise ConfigError(f"descendant 'a' must be a nonnegative integer, got {a!r}")
    tag = spec.get("tag")
    if tag not in CLASS_TAGS:
        raise ConfigError(f"tag must be one of {CLASS_TAGS}, got {tag!r}")
    label = spec.get("label", [])
    if not isinstance(label, list) or len(label) != len(orb.orders) or not all(isinstance(x, int) for x in label):
        raise ConfigError(f"label must list {len(orb.orders)} integer residues, got {label!r}")
    coeff = spec.get("coeff", "1")
    if not isinstance(coeff, (str, int)) or isinstance(coeff, bool):
        raise ConfigError(f"coeff must be a string 'p/q' or an integer, got {coeff!r}")
    try:
        c = rational(coeff)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad coefficient {coeff!r}: {exc}") from None
    series = insertion_series(orb, Insertion(a, tag, tuple(label)), normalization)
    return {k: v * c for k, v in series.items()}, (a, tag, tuple(label), c)


def _parse_series(orb: OrbifoldData, spec: dict, normalization: str):
    if "series" in spec:
        terms = spec["series"]
        if not isinstance(terms, list) or not terms:
            raise ConfigError("'series' must be a nonempty list")
    else:
        terms = [spec]
    parsed = [_parse_term(orb, t, normalization) for t in terms]
    return add_series(*(p[0] for p in parsed)), [p[1] for p in parsed]


class Job:
    """A parsed correlator config."""

    def __init__(self, cfg: dict):
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        orders = _require(cfg, "group", list)
        action = _require(cfg, "action", list)
        try:
            self.orb = build_orbifold(orders, action)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"bad orbifold: {exc}") from None
        self.g = _require(cfg, "genus", int)
        if self.g < 0:
            raise ConfigError("genus must be nonnegative")
        self.normalization = cfg.get("normalization", EQUIVARIANT)
        if self.normalization not in NORMALIZATIONS:
            raise ConfigError(f"normalization must be one of {NORMALIZATIONS}")
        ins = cfg.get("insertions", [])
        if not isinstance(ins, list):
            raise ConfigError("'insertions' must be a list")
        self.ordered = []
        self.ordered_terms = []
        for spec in ins:
            series, terms = _parse_series(self.orb, spec, self.normalization)
            self.ordered.append(series)
            self.ordered_terms.append(terms)
        self.unordered = None
        self.unordered_terms = []
        self.n_unordered = 0
        un = cfg.get("unordered")
        if un is not None:
            if not isinstance(un, dict):
                raise ConfigError("'unordered' must be an object")
            self.n_unordered = _require(un, "count", int)
            if self.n_unordered < 0:
                raise ConfigError("unordered count must be nonnegative")
            self.unordered, self.unordered_terms = _parse_series(self.orb, un, self.normalization)
        n_total = len(self.ordered) + self.n_unordered
        if 2 * self.g - 2 + n_total <= 0:
            raise ConfigError(f"unstable (g, n) = ({self.g}, {n_total}): need 2g - 2 + n > 0")
        trunc = cfg.get("truncation") or {}
        if not isinstance(trunc, dict):
            raise ConfigError("'truncation' must be an object")
        minimum = query_order(self.g, n_total)
        self.order = trunc.get("order", minimum)
        if not isinstance(self.order, int) or isinstance(self.order, bool) or self.order < minimum:
            raise ConfigError(f"truncation order must be an integer >= {minimum}")
        self.verify_oracle = bool(cfg.get("verify_oracle", False))
        self.emit_graphs = bool(cfg.get("emit_graphs", False))

    def request(self) -> CorrelatorRequest:
        return CorrelatorRequest(
            self.orb, self.g, self.ordered, self.unordered, self.n_unordered, self.normalization
        )

    def graphs(self):
        return enumerate_graphs(len(self.orb.characters), self.g, len(self.ordered), self.n_unordered)


def _header(command: str) -> dict:
    return {"version": __version__, "command": command, "backend": BACKEND}


def _aut_histogram(graphs) -> dict:
    hist = Counter(aut_order(gr) for gr in graphs)
    return {str(k): hist[k] for k in sorted(hist)}


def oracle_value(job: Job) -> PuiseuxPoly:
    """The correlator rebuilt from oracle extractions of monomial keys.

    The requested series are expanded multilinearly into z^a phi_gamma pieces
    (phi-bar_gamma for the equivariant normalization, whose correlators are
    e_1^(g-1) times the twisted ones with the same coefficients).
    """
    orb = job.orb
    n_total = len(job.ordered) + job.n_unordered
    pot = twisted_potential(orb, job.g, n_total)
    slots = list(job.ordered) + [job.unordered] * job.n_unordered
    total = PuiseuxPoly.zero(orb.r, orb.exponent)
    for choice in product(*(list(s.items()) for s in slots)):
        coeff = PuiseuxPoly.constant(orb.r, orb.exponent, 1)
        for _, c in choice:
            coeff = coeff * c
        if not coeff:
            continue
        key = tuple((gamma, a) for (gamma, a), _ in choice)
        if any(a > pot.bounds[2] for _, a in key):
            continue
        total = total + coeff * pot.correlator(job.g, key)
    if job.n_unordered:
        total = total * mpq(1, factorial(job.n_unordered))
    if job.normalization == EQUIVARIANT:
        total = total * PuiseuxPoly.mono(orb.r, orb.exponent, [job.g - 1] * orb.r, 1)
    return total


def run_correlator(cfg: dict) -> dict:
    job = Job(cfg)
    gs = GraphSum(job.orb, job.order)
    graphs = job.graphs()
    value = gs.correlator(job.request())
    doc = _header("correlator")
    doc.update(
        {
            "normalization": job.normalization,
            "genus": job.g,
            "result": value.to_records(),
            "result_text": repr(value),
            "graph_count": len(graphs),
            "aut_histogram": _aut_histogram(graphs),
        }
    )
    if job.emit_graphs:
        doc["graphs"] = [
            {**gr.to_dict(), "aut": aut_order(gr), "weight": w.to_records()}
            for gr, w in gs.graph_weights(job.request(), graphs)
        ]
    if job.verify_oracle:
        oracle = oracle_value(job)
        doc["oracle"] = {"result": oracle.to_records(), "result_text": repr(oracle), "equal": oracle == value}
    return doc


def run_graphs(cfg: dict) -> dict:
    job = Job(cfg)
    graphs = job.graphs()
    doc = _header("graphs")
    doc.update(
        {
            "genus": job.g,
            "graph_count": len(graphs),
            "aut_histogram": _aut_histogram(graphs),
            "graphs": [{**gr.to_dict(), "aut": aut_order(gr)} for gr in graphs],
        }
    )
    return doc


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh, parse_float=_reject_float)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from None


def _reject_float(text: str):
    raise ConfigError(f"floating-point number {text} in config; write rationals as strings 'p/q'")


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="orbigw", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"orbigw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    p_corr = sub.add_parser("correlator", help="compute a correlator by the graph sum")
    p_corr.add_argument("config")
    p_graphs = sub.add_parser("graphs", help="enumerate the stable labeled graphs of a config")
    p_graphs.add_argument("config")
    p_self = sub.add_parser("selfcheck", help="run the invariant suites")
    p_self.add_argument("--full", action="store_true", help="the full test orbifold set (minutes)")
    args = parser.parse_args(argv)

    try:
        if args.command == "selfcheck":
            report = run_selfcheck("full" if args.full else "quick")
            doc = _header("selfcheck")
            doc.update(report)
            _emit(doc)
            return 0 if report["passed"] else 1
        cfg = _load(args.config)
        if args.command == "graphs":
            _emit(run_graphs(cfg))
            return 0
        doc = run_correlator(cfg)
        _emit(doc)
        if "oracle" in doc and not doc["oracle"]["equal"]:
            print(
                f"oracle mismatch: graph sum {doc['result_text']} vs oracle {doc['oracle']['result_text']}",
                file=sys.stderr,
            )
            return 3
        return 0
    except ConfigError as exc:
        doc = _header(args.command)
        doc["error"] = str(exc)
        _emit(doc)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
