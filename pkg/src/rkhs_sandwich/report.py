"""Machine-readable run reports: one self-describing JSON document per
invocation, deterministic for fixed (args, seed, version)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__
from .norms import QuadratureConfig
from .xrational import ExtRational

SCHEMA = "rkhs-sandwich-report/1"

# every rule tag a verdict or embedding can cite, with the mathematical
# statement it stands for
RULE_REGISTRY: Dict[str, str] = {
    "identity": "a space embeds into itself",
    "R1": "Triebel-Lizorkin: s > t and s - t >= d/p1 - d/p2",
    "R2": "Besov: s > t and s - t > d/p1 - d/p2",
    "R3": "same smoothness, integration index decreases (p1 >= p2), equal "
          "fein index; Triebel-Lizorkin needs a finite fein index",
    "R4": "same smoothness and integration index, fein index increases; any "
          "fein change is free once s > t at equal p",
    "R5": "cross-scale (Besov vs Triebel-Lizorkin): s > t and "
          "s - t > d/p1 - d/p2 strictly",
    "R6": "integer Sobolev on a bounded domain: holds iff s >= t and "
          "s - t >= d/p1 - d/p2",
    "R7": "Hoelder on a bounded metric space: alpha >= beta",
    "R8": "sequence spaces: lp into lq iff p <= q",
    "R9": "Lebesgue on a bounded domain: Lp into Lq for q <= p",
    "R10": "supercritical smoothness s > d/p embeds into bounded continuous "
           "functions",
    "R11": "identifications: Sobolev, Slobodeckij, and Hoelder rewrite onto "
           "the Besov / Triebel-Lizorkin scale",
    "lp-iff": "an intermediate RKHS between lp and lq exists iff p <= 2 <= q, "
              "witnessed by l2",
    "Lp-iff": "an intermediate RKHS between Lp and Lq on a bounded domain "
              "exists iff q <= 2 <= p, witnessed by L2",
    "holder-packing": "for a Hoelder pair the smoothness gap must satisfy "
                      "2(alpha - beta) >= k, k the packing exponent of the "
                      "domain; above the threshold a fractional W^u_2 fits",
    "slobodeckij-threshold": "the gap s - t against the deficiency "
                             "(d/p1 - d/2)_+ + (d/2 - d/p2)_+ decides the "
                             "fractional scale; admissible u fill an interval",
    "besov-tl-threshold": "the gap s - t against the deficiency decides the "
                          "Besov / Triebel-Lizorkin scale",
    "mixed-necessity": "coherent-set smoothness yields the necessary "
                       "condition |A|1 - |B|1 >= deficiency; no sufficiency",
    "c0-threshold": "against the bounded functions the threshold is "
                    "(d/p - d/2)_+ + d/2 on the source smoothness",
    "unbounded-domain": "no RKHS with bounded kernel sits above smooth "
                        "functions on an unbounded Euclidean domain",
    "unmatched": "no decision rule covers the queried pair",
}


def _plain(value: Any) -> Any:
    """JSON-stable encoding; rationals become strings to stay exact."""
    if isinstance(value, ExtRational):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 \
            else str(value.numerator)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return _plain(asdict(value))
    return value


@dataclass
class Report:
    command: str
    query: Dict[str, Any]
    payload: Dict[str, Any]
    rule_citations: List[Dict[str, str]] = field(default_factory=list)
    version: str = __version__
    seed: Optional[int] = None
    quadrature: Optional[Dict[str, Any]] = None
    schema: str = SCHEMA

    @staticmethod
    def build(command: str, query: Dict[str, Any], payload: Dict[str, Any],
              rules: Optional[List[str]] = None, seed: Optional[int] = None,
              quadrature: Optional[QuadratureConfig] = None) -> "Report":
        citations = []
        for tag in rules or []:
            for part in tag.split("+"):
                citations.append({"rule": part,
                                  "anchor": RULE_REGISTRY.get(part, "unregistered")})
        quad = None
        if quadrature is not None:
            quad = {"resolution": quadrature.resolution,
                    "tolerance": quadrature.tolerance,
                    "max_resolution": quadrature.max_resolution,
                    "mc_samples": quadrature.mc_samples}
        return Report(command=command, query=_plain(query), payload=_plain(payload),
                      rule_citations=citations, seed=seed, quadrature=quad)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "Report":
        data = json.loads(text)
        return Report(**data)
