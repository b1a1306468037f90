"""Germs from the worked examples, as parser source text."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .parser import parse_poly


@dataclass(frozen=True)
class Fixture:
    name: str
    germ: str
    note: str
    bindings: Optional[dict] = None

    def poly(self):
        return parse_poly(self.germ, self.bindings)


FIXTURES = {
    f.name: f
    for f in [
        Fixture("cusp", "x^2 - y^3", "cusp, order functions along y^(3/2) and y^(3/2)+y^(5/2)"),
        Fixture("ex51-f", "x*(x^3 - y^5)", "first pair, f"),
        Fixture("ex51-g", "x*(x^3 + y^5)", "first pair, g"),
        Fixture("ex52-f", "x*(x^3 - y^5)*(x^3 + y^5)", "second pair, f"),
        Fixture("ex52-g", "x*(x^3 - a*y^5)*(x^3 - b*y^5)", "second pair, g", {"a": 1, "b": 2}),
        Fixture("ex53-f", "x*(x^3 - y^5)*((x^3 - y^5)^3 - y^17)", "third pair, f"),
        Fixture("ex53-g", "x*(x^3 + a*y^5)*(x^3 - y^7)*(x^6 + b*y^10)", "third pair, g",
                {"a": 1, "b": 1}),
        Fixture("A1", "x^3 - 3*t*x*y^4 + 2*y^6", "Arnold J10 family at t = 1", {"t": 1}),
        Fixture("K0", "x^4 + t*x^2*y^2 + y^4", "quartic family at t = 0", {"t": 0}),
        Fixture("K6", "x^4 + t*x^2*y^2 + y^4", "quartic family at t = 6", {"t": 6}),
        Fixture("node", "x^2 - y^2", "two transverse lines"),
        Fixture("tacnode", "(x - y^2)*(x + y^2)", "two tangent smooth branches"),
        Fixture("E6", "x^3 - y^4", "E6 singularity"),
        Fixture("nested", "(x^2 - y^3)^2 - y^7", "two Puiseux pairs"),
        Fixture("ellipse", "x^2 + 2*y^2", "isolated zero"),
        Fixture("fold", "x^3 - x*y^2", "three real lines"),
    ]
}


def corpus():
    """(name, BiPoly) for every fixture."""
    return [(n, f.poly()) for n, f in FIXTURES.items()]
