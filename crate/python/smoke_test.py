"""Smoke test for the freeconv_py extension.

Build first:
    cargo build -p freeconv-py --release
    cp target/release/libfreeconv_py.so python/freeconv_py.so
"""

import json
from fractions import Fraction
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import freeconv_py as fc


def main():
    p = fc.Poly.from_roots(["1", "-1"])
    s = p.boxplus(p)
    assert [Fraction(c) for c in s.coeffs()] == [-2, 0, 1], s.coeffs()
    assert s.is_real_rooted()
    assert p.boxplus(fc.Poly.x_pow(2)) == p

    lo, hi = s.maxroot()
    assert Fraction(lo) <= Fraction(2) ** 0.5 <= Fraction(hi)
    assert [r[2] for r in fc.Poly.from_roots(["2", "2", "0"]).roots()] == [2, 2, 1]

    u = p.apply_u_alpha("1/2")
    assert u == p.boxplus(fc.Poly.u_alpha(2, "1/2"))

    assert fc.Poly.from_json(p.to_json()) == p

    triples = fc.horn_triples(2, 1)
    assert ([1], [1], [1]) in triples, triples

    assert fc.majorizes_status(["3", "1"], ["2", "2"]) == "Verified"
    assert fc.majorizes_status(["2", "2"], ["3", "1"]) == "ViolatedCertified"

    out = json.loads(fc.search("submodularity", 3, 5, 1))
    assert out["summary"]["trials"] == 5, out["summary"]

    rep = json.loads(fc.reproduce_counterexample())
    assert rep["status"] == "ViolatedCertified", rep["status"]
    again = json.loads(fc.verify(json.dumps(rep)))
    print("re-verified counterexample:", again["status"])

    print("ok")


if __name__ == "__main__":
    main()
